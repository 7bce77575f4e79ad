#include "manet/packet.h"

#include <stdexcept>

namespace manet {

namespace {

class Writer
{
public:
  void U8 (uint8_t v) { m_buf.push_back (v); }
  void U16 (uint16_t v)
  {
    U8 (static_cast<uint8_t> (v >> 8));
    U8 (static_cast<uint8_t> (v));
  }
  void U32 (uint32_t v)
  {
    for (int s = 24; s >= 0; s -= 8)
      {
        U8 (static_cast<uint8_t> (v >> s));
      }
  }
  void U64 (uint64_t v)
  {
    U32 (static_cast<uint32_t> (v >> 32));
    U32 (static_cast<uint32_t> (v));
  }
  void Pad (size_t n) { m_buf.insert (m_buf.end (), n, 0); }
  std::vector<uint8_t> Take () { return std::move (m_buf); }

private:
  std::vector<uint8_t> m_buf;
};

class Reader
{
public:
  explicit Reader (std::span<const uint8_t> b) : m_b (b) {}
  uint8_t U8 ()
  {
    if (m_pos >= m_b.size ())
      {
        throw std::invalid_argument ("packet truncated");
      }
    return m_b[m_pos++];
  }
  uint16_t U16 ()
  {
    uint16_t hi = U8 ();
    return static_cast<uint16_t> ((hi << 8) | U8 ());
  }
  uint32_t U32 ()
  {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      {
        v = (v << 8) | U8 ();
      }
    return v;
  }
  uint64_t U64 ()
  {
    uint64_t hi = U32 ();
    return (hi << 32) | U32 ();
  }
  void Skip (size_t n)
  {
    for (size_t i = 0; i < n; ++i)
      {
        U8 ();
      }
  }
  bool AtEnd () const { return m_pos == m_b.size (); }

private:
  std::span<const uint8_t> m_b;
  size_t m_pos = 0;
};

} // namespace

PacketType
TypeOf (const Packet &p)
{
  switch (p.index ())
    {
    case 0:
      return PacketType::Rreq;
    case 1:
      return PacketType::Rrep;
    case 2:
      return PacketType::Rerr;
    case 3:
      return PacketType::Data;
    default:
      return std::get<ProbePacket> (p).isReply ? PacketType::ProbeReply : PacketType::Probe;
    }
}

std::string_view
TypeName (PacketType t)
{
  switch (t)
    {
    case PacketType::Rreq:
      return "rreq";
    case PacketType::Rrep:
      return "rrep";
    case PacketType::Rerr:
      return "rerr";
    case PacketType::Data:
      return "data";
    case PacketType::Probe:
      return "probe";
    case PacketType::ProbeReply:
      return "probe_reply";
    }
  return "unknown";
}

uint32_t
FrameSize (const Packet &p)
{
  struct Visitor
  {
    uint32_t operator() (const RreqPacket &r) const
    {
      return FrameSizes::kRreq + (r.digest ? FrameSizes::kDigest : 0) +
             FrameSizes::kExcludedEntry * static_cast<uint32_t> (r.excluded.size ());
    }
    uint32_t operator() (const RrepPacket &) const { return FrameSizes::kRrep; }
    uint32_t operator() (const RerrPacket &r) const
    {
      size_t extra = r.unreachable.empty () ? 0 : r.unreachable.size () - 1;
      return FrameSizes::kRerr + FrameSizes::kRerrExtraEntry * static_cast<uint32_t> (extra);
    }
    uint32_t operator() (const DataPacket &d) const { return d.payloadSize; }
    uint32_t operator() (const ProbePacket &) const { return FrameSizes::kProbe; }
  };
  return std::visit (Visitor{}, p);
}

std::vector<uint8_t>
Serialize (const Packet &p)
{
  Writer w;
  struct Visitor
  {
    Writer &w;
    void operator() (const RreqPacket &r)
    {
      w.U8 (static_cast<uint8_t> (PacketType::Rreq));
      w.U8 (r.digest ? 1 : 0);
      w.U8 (r.ttl);
      w.U8 (r.hopCount);
      w.U32 (r.src);
      w.U32 (r.dest);
      w.U32 (r.srcSeq);
      w.U32 (r.destSeq);
      w.U32 (r.bcastId);
      if (r.excluded.size () > 255)
        {
          throw std::invalid_argument ("RREQ exclusion list longer than 255 entries");
        }
      w.U8 (static_cast<uint8_t> (r.excluded.size ()));
      w.Pad (3);
      if (r.digest)
        {
          for (uint8_t b : *r.digest)
            {
              w.U8 (b);
            }
        }
      for (NodeId id : r.excluded)
        {
          w.U32 (id);
        }
    }
    void operator() (const RrepPacket &r)
    {
      w.U8 (static_cast<uint8_t> (PacketType::Rrep));
      w.U8 (r.hopCount);
      w.Pad (2);
      w.U32 (r.src);
      w.U32 (r.dest);
      w.U32 (r.destSeq);
      w.U32 (r.originator);
      w.U32 (r.lifetimeMs);
      w.U32 (r.claimedNextHop);
    }
    void operator() (const RerrPacket &r)
    {
      if (r.unreachable.size () > 255)
        {
          throw std::invalid_argument ("RERR longer than 255 entries");
        }
      w.U8 (static_cast<uint8_t> (PacketType::Rerr));
      w.U8 (static_cast<uint8_t> (r.unreachable.size ()));
      w.Pad (2);
      for (const auto &u : r.unreachable)
        {
          w.U32 (u.dest);
          w.U32 (u.destSeq);
        }
    }
    void operator() (const DataPacket &d)
    {
      w.U8 (static_cast<uint8_t> (PacketType::Data));
      w.U8 (d.hopBudget);
      w.U16 (d.payloadSize);
      w.U32 (d.flowId);
      w.U32 (d.seq);
      w.U32 (d.src);
      w.U32 (d.dest);
      w.U64 (static_cast<uint64_t> (d.sentAt.GetMicros ()));
    }
    void operator() (const ProbePacket &pr)
    {
      w.U8 (static_cast<uint8_t> (pr.isReply ? PacketType::ProbeReply : PacketType::Probe));
      w.U8 (pr.confirmed ? 1 : 0);
      w.U16 (pr.probeId);
      w.U32 (pr.requester);
      w.U32 (pr.target);
      w.U32 (pr.dest);
    }
  };
  std::visit (Visitor{w}, p);
  return w.Take ();
}

Packet
Deserialize (std::span<const uint8_t> bytes)
{
  Reader r (bytes);
  auto type = static_cast<PacketType> (r.U8 ());
  Packet out;
  switch (type)
    {
    case PacketType::Rreq: {
      RreqPacket q;
      uint8_t flags = r.U8 ();
      q.ttl = r.U8 ();
      q.hopCount = r.U8 ();
      q.src = r.U32 ();
      q.dest = r.U32 ();
      q.srcSeq = r.U32 ();
      q.destSeq = r.U32 ();
      q.bcastId = r.U32 ();
      uint8_t nExcl = r.U8 ();
      r.Skip (3);
      if (flags & 1)
        {
          Digest d{};
          for (auto &b : d)
            {
              b = r.U8 ();
            }
          q.digest = d;
        }
      for (uint8_t i = 0; i < nExcl; ++i)
        {
          q.excluded.push_back (r.U32 ());
        }
      out = std::move (q);
      break;
    }
    case PacketType::Rrep: {
      RrepPacket p;
      p.hopCount = r.U8 ();
      r.Skip (2);
      p.src = r.U32 ();
      p.dest = r.U32 ();
      p.destSeq = r.U32 ();
      p.originator = r.U32 ();
      p.lifetimeMs = r.U32 ();
      p.claimedNextHop = r.U32 ();
      out = p;
      break;
    }
    case PacketType::Rerr: {
      RerrPacket e;
      uint8_t n = r.U8 ();
      r.Skip (2);
      for (uint8_t i = 0; i < n; ++i)
        {
          UnreachableDest u;
          u.dest = r.U32 ();
          u.destSeq = r.U32 ();
          e.unreachable.push_back (u);
        }
      out = std::move (e);
      break;
    }
    case PacketType::Data: {
      DataPacket d;
      d.hopBudget = r.U8 ();
      d.payloadSize = r.U16 ();
      d.flowId = r.U32 ();
      d.seq = r.U32 ();
      d.src = r.U32 ();
      d.dest = r.U32 ();
      d.sentAt = SimTime::Micros (static_cast<int64_t> (r.U64 ()));
      out = std::move (d);
      break;
    }
    case PacketType::Probe:
    case PacketType::ProbeReply: {
      ProbePacket p;
      p.isReply = type == PacketType::ProbeReply;
      p.confirmed = r.U8 () != 0;
      p.probeId = r.U16 ();
      p.requester = r.U32 ();
      p.target = r.U32 ();
      p.dest = r.U32 ();
      out = p;
      break;
    }
    default:
      throw std::invalid_argument ("unknown packet type " + std::to_string (static_cast<int> (type)));
    }
  if (!r.AtEnd ())
    {
      throw std::invalid_argument ("trailing bytes after packet");
    }
  return out;
}

} // namespace manet
