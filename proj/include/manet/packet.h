// Routing and data packet types with their fixed-width wire layouts.
//
// Layout (all integers big-endian):
//   RREQ   type=1 | flags | ttl | hops | src | dest | src_seq | dest_seq | bcast_id
//          | n_excl | pad[3] | [digest:20 if flags&1] | excl[n_excl]:4
//   RREP   type=2 | hops | pad[2] | src | dest | dest_seq | originator | lifetime_ms | claimed_next_hop
//   RERR   type=3 | count | pad[2] | (dest, dest_seq)[count]
//   DATA   type=4 | hop_budget | payload_size:16 | flow | seq | src | dest | sent_at_us:64
//   PROBE  type=5 (confirm) / 6 (reply) | verdict | probe_id:16 | requester | target | dest
// Node ids, sequence numbers and broadcast ids are 32-bit; ttl and hop counts 8-bit.
#ifndef MANET_PACKET_H
#define MANET_PACKET_H

#include "manet/field.h"
#include "manet/sim_core.h"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace manet {

constexpr NodeId kBroadcast = 0xFFFFFFFFu;

using Digest = std::array<uint8_t, 20>;

struct RreqPacket
{
  NodeId src = 0;
  NodeId dest = 0;
  uint32_t srcSeq = 0;
  uint32_t destSeq = 0;
  uint32_t bcastId = 0;
  uint8_t ttl = 0;
  uint8_t hopCount = 0;
  std::optional<Digest> digest;
  /// Neighbours the sender refuses to route through for this discovery.
  std::vector<NodeId> excluded;

  bool operator== (const RreqPacket &) const = default;
};

struct RrepPacket
{
  NodeId src = 0; // route requester
  NodeId dest = 0;
  uint32_t destSeq = 0;
  uint8_t hopCount = 0;
  NodeId originator = 0;
  uint32_t lifetimeMs = 0;
  NodeId claimedNextHop = 0;

  bool operator== (const RrepPacket &) const = default;
};

struct UnreachableDest
{
  NodeId dest = 0;
  uint32_t destSeq = 0;
  bool operator== (const UnreachableDest &) const = default;
};

struct RerrPacket
{
  std::vector<UnreachableDest> unreachable;
  bool operator== (const RerrPacket &) const = default;
};

struct DataPacket
{
  uint32_t flowId = 0;
  uint32_t seq = 0;
  NodeId src = 0;
  NodeId dest = 0;
  SimTime sentAt;
  uint8_t hopBudget = 64;
  uint16_t payloadSize = 512;
  /// Every node that handled the packet, starting with the source. Not on the wire.
  std::vector<NodeId> trace;

  bool operator== (const DataPacket &o) const
  {
    return flowId == o.flowId && seq == o.seq && src == o.src && dest == o.dest && sentAt == o.sentAt &&
           hopBudget == o.hopBudget && payloadSize == o.payloadSize;
  }
};

/// One-hop route confirmation query and its answer.
struct ProbePacket
{
  bool isReply = false;
  bool confirmed = false;
  uint16_t probeId = 0;
  NodeId requester = 0;
  NodeId target = 0;
  NodeId dest = 0;

  bool operator== (const ProbePacket &) const = default;
};

using Packet = std::variant<RreqPacket, RrepPacket, RerrPacket, DataPacket, ProbePacket>;

enum class PacketType : uint8_t
{
  Rreq = 1,
  Rrep = 2,
  Rerr = 3,
  Data = 4,
  Probe = 5,
  ProbeReply = 6,
};

PacketType TypeOf (const Packet &p);
std::string_view TypeName (PacketType t);

/// Nominal on-air frame sizes, including link and network header overhead.
struct FrameSizes
{
  static constexpr uint32_t kRreq = 48;
  static constexpr uint32_t kDigest = 20;
  static constexpr uint32_t kExcludedEntry = 4;
  static constexpr uint32_t kRrep = 44;
  static constexpr uint32_t kRerr = 32;
  static constexpr uint32_t kRerrExtraEntry = 8;
  static constexpr uint32_t kProbe = 16;
};

uint32_t FrameSize (const Packet &p);

std::vector<uint8_t> Serialize (const Packet &p);
/// Throws std::invalid_argument on malformed input.
Packet Deserialize (std::span<const uint8_t> bytes);

} // namespace manet

#endif
