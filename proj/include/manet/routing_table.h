// Per-node AODV state containers: the routing table with lifetime timers
// and the (src, bcast_id) duplicate-suppression cache.
#ifndef MANET_ROUTING_TABLE_H
#define MANET_ROUTING_TABLE_H

#include "manet/packet.h"
#include "manet/sim_core.h"
#include "manet/types.h"

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace manet {

struct RouteEntry
{
  NodeId dest = 0;
  uint32_t destSeq = 0;
  NodeId nextHop = 0;
  uint8_t hopCount = 0;
  bool valid = false;
  EventId lifetimeTimer;
  SimTime expiresAt;
  /// Bumped on every accepted UpdateRoute; lets SD-AODV tell a legitimate
  /// refresh from an out-of-band rewrite of nextHop.
  uint64_t generation = 0;
  std::set<NodeId> precursors;
};

/// Invalid entries are kept (with their sequence number) after expiry so the
/// table doubles as a route cache.
class RoutingTable
{
public:
  using InstallHook = std::function<void (const RouteEntry &)>;

  RoutingTable (Simulator &sim, SimTime lifetime);
  ~RoutingTable ();
  RoutingTable (const RoutingTable &) = delete;
  RoutingTable &operator= (const RoutingTable &) = delete;

  /// Install or overwrite iff there is no entry, the sequence number is
  /// fresher, or it is equal and either the hop count is smaller or the
  /// stored entry is invalid. Accepted updates (re)arm the lifetime timer.
  bool UpdateRoute (NodeId dest, uint32_t seq, NodeId nextHop, uint8_t hops);

  const RouteEntry *Lookup (NodeId dest) const;
  const RouteEntry *LookupValid (NodeId dest) const;

  /// Push the lifetime of a valid route out to now + lifetime.
  void Refresh (NodeId dest);
  bool Invalidate (NodeId dest);
  /// Invalidate every valid route whose next hop is `nextHop`; returns the affected entries.
  std::vector<RouteEntry> InvalidateVia (NodeId nextHop);
  void AddPrecursor (NodeId dest, NodeId precursor);

  /// Overwrite the next hop without going through the update rules. Models
  /// route-state corruption; the generation counter is left untouched.
  void TamperNextHop (NodeId dest, NodeId nextHop);

  void SetInstallHook (InstallHook h) { m_onInstall = std::move (h); }
  size_t Size () const { return m_entries.size (); }
  const std::map<NodeId, RouteEntry> &Entries () const { return m_entries; }
  SimTime Lifetime () const { return m_lifetime; }

private:
  void Arm (RouteEntry &e);

  Simulator &m_sim;
  SimTime m_lifetime;
  std::map<NodeId, RouteEntry> m_entries;
  InstallHook m_onInstall;
};

struct SeenRreq
{
  NodeId prevHop = 0;
  /// Destination as carried by the first copy accepted at this node.
  NodeId originalDest = 0;
  RreqPacket copy;
  EventId expiry;
};

class SeenRreqCache
{
public:
  SeenRreqCache (Simulator &sim, SimTime lifetime);
  ~SeenRreqCache ();
  SeenRreqCache (const SeenRreqCache &) = delete;
  SeenRreqCache &operator= (const SeenRreqCache &) = delete;

  bool Contains (NodeId src, uint32_t bcastId) const { return m_entries.contains ({src, bcastId}); }
  const SeenRreq *Find (NodeId src, uint32_t bcastId) const;
  /// Most recent flood from `src` looking for `dest`, if still cached.
  const SeenRreq *FindLatest (NodeId src, NodeId dest) const;
  /// Returns false (and leaves the cache alone) if the pair is already present.
  bool Insert (NodeId prevHop, const RreqPacket &rreq);
  size_t Size () const { return m_entries.size (); }

private:
  Simulator &m_sim;
  SimTime m_lifetime;
  std::map<std::pair<NodeId, uint32_t>, SeenRreq> m_entries;
};

} // namespace manet

#endif
