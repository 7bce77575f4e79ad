#include "manet/packet.h"
#include "manet/sdaodv.h"

#include <doctest.h>

using namespace manet;

namespace {

Packet
RandomPacket (RngStream &r)
{
  auto u32 = [&r] { return static_cast<uint32_t> (r.NextU64 ()); };
  auto u8 = [&r] { return static_cast<uint8_t> (r.NextU64 ()); };
  switch (r.UniformInt (5))
    {
    case 0:
      {
        RreqPacket p{u32 (), u32 (), u32 (), u32 (), u32 (), u8 (), u8 (), std::nullopt, {}};
        if (r.Bernoulli (0.5))
          {
            p.digest = ComputeDigest (p.dest);
          }
        for (uint64_t i = r.UniformInt (6); i > 0; --i)
          {
            p.excluded.push_back (u32 ());
          }
        return p;
      }
    case 1:
      return RrepPacket{u32 (), u32 (), u32 (), u8 (), u32 (), u32 (), u32 ()};
    case 2:
      {
        RerrPacket p;
        for (uint64_t i = r.UniformInt (4) + 1; i > 0; --i)
          {
            p.unreachable.push_back ({u32 (), u32 ()});
          }
        return p;
      }
    case 3:
      {
        DataPacket d;
        d.flowId = u32 ();
        d.seq = u32 ();
        d.src = u32 ();
        d.dest = u32 ();
        d.sentAt = SimTime::Micros (static_cast<int64_t> (r.NextU64 () >> 2));
        d.hopBudget = u8 ();
        d.payloadSize = static_cast<uint16_t> (r.NextU64 ());
        return d;
      }
    default:
      return ProbePacket{r.Bernoulli (0.5), r.Bernoulli (0.5), static_cast<uint16_t> (r.NextU64 ()), u32 (), u32 (),
                         u32 ()};
    }
}

} // namespace

TEST_SUITE ("packet")
{
  TEST_CASE ("serialize/deserialize round trip")
  {
    RngStream r (11, "packets");
    for (int i = 0; i < 5000; ++i)
      {
        Packet p = RandomPacket (r);
        auto bytes = Serialize (p);
        REQUIRE (Deserialize (bytes) == p);
      }
  }

  TEST_CASE ("malformed input is rejected")
  {
    CHECK_THROWS_AS (Deserialize (std::vector<uint8_t>{}), std::invalid_argument);
    CHECK_THROWS_AS (Deserialize (std::vector<uint8_t>{99, 0, 0, 0}), std::invalid_argument);
    auto bytes = Serialize (RrepPacket{1, 2, 3, 4, 5, 6, 7});
    bytes.pop_back ();
    CHECK_THROWS_AS (Deserialize (bytes), std::invalid_argument);
  }

  TEST_CASE ("frame sizes")
  {
    RreqPacket plain;
    CHECK (FrameSize (plain) == FrameSizes::kRreq);
    RreqPacket secure = plain;
    secure.digest = ComputeDigest (3);
    secure.excluded = {1, 2};
    CHECK (FrameSize (secure) == FrameSizes::kRreq + FrameSizes::kDigest + 2 * FrameSizes::kExcludedEntry);
    DataPacket d;
    CHECK (FrameSize (d) == 512);
    CHECK (TypeOf (Packet{ProbePacket{true}}) == PacketType::ProbeReply);
  }
}
