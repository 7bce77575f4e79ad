// SD-AODV defences layered over AODV:
//  - destination digest carried in every RREQ and re-checked hop by hop,
//  - next-hop shadow written whenever a packet is handed to the link layer,
//  - RREP cross-verification via a route-confirm probe (driven by AodvAgent),
//  - the per-node list of neighbours detected as malicious.
#ifndef MANET_SDAODV_H
#define MANET_SDAODV_H

#include "manet/packet.h"
#include "manet/routing_table.h"
#include "manet/types.h"

#include <map>
#include <string_view>

namespace manet {

struct SdAodvConfig
{
  SimTime probeTimeout = SimTime::Seconds (0.1);
  /// Only "sha1" is provided; the name is recorded in the STAT header.
  std::string_view hash = "sha1";
};

/// SHA-1 of the 4-byte big-endian encoding of `dest`.
Digest ComputeDigest (NodeId dest);

struct SuspectRecord
{
  AttackKind kind = AttackKind::None;
  SimTime detectedAt;
};

/// Local knowledge only; a node is never unflagged.
class SuspectList
{
public:
  /// Returns true if `node` was not flagged before.
  bool Flag (NodeId node, AttackKind kind, SimTime now);
  bool Contains (NodeId node) const { return m_flagged.contains (node); }
  const std::map<NodeId, SuspectRecord> &All () const { return m_flagged; }
  size_t Size () const { return m_flagged.size (); }

private:
  std::map<NodeId, SuspectRecord> m_flagged;
};

struct ShadowRecord
{
  NodeId nextHop = 0;
  SimTime recordedAt;
  /// RoutingTable generation of the route in use at record time.
  uint64_t routeGeneration = 0;
};

class NextHopShadow
{
public:
  void Record (NodeId dest, NodeId nextHop, SimTime now, uint64_t routeGeneration);
  const ShadowRecord *Find (NodeId dest) const;
  size_t Size () const { return m_records.size (); }

private:
  std::map<NodeId, ShadowRecord> m_records;
};

enum class DigestCheck
{
  Clean,
  TamperedRestored,
  TamperedDropped,
};

/// Recompute the digest over rreq.dest. On mismatch the previous hop is
/// flagged; if the seen cache holds the first clean copy of this flood the
/// destination is written back, otherwise the caller must drop the packet.
DigestCheck VerifyRreqDigest (RreqPacket &rreq, NodeId prevHop, const SeenRreqCache &seen, SuspectList &suspects,
                              SimTime now);

enum class NextHopCheck
{
  Ok,
  Restored,
};

/// Compare the routing table's next hop for `dest` with the shadow. A
/// difference that no accepted route update explains is undone from the
/// shadow and `injector` is flagged.
NextHopCheck VerifyNextHop (NodeId dest, RoutingTable &table, const NextHopShadow &shadow, SuspectList &suspects,
                            NodeId injector, SimTime now);

/// A DATA packet for `dest` came back from the very neighbour this node
/// handed it to: that neighbour's next hop was turned around into a loop.
bool IsLoopedBack (NodeId dest, NodeId prevHop, const NextHopShadow &shadow);

} // namespace manet

#endif
