#include "manet/routing_table.h"

namespace manet {

RoutingTable::RoutingTable (Simulator &sim, SimTime lifetime) : m_sim (sim), m_lifetime (lifetime) {}

RoutingTable::~RoutingTable ()
{
  for (auto &[dest, e] : m_entries)
    {
      m_sim.Cancel (e.lifetimeTimer);
    }
}

void
RoutingTable::Arm (RouteEntry &e)
{
  m_sim.Cancel (e.lifetimeTimer);
  e.expiresAt = m_sim.Now () + m_lifetime;
  NodeId dest = e.dest;
  e.lifetimeTimer = m_sim.Schedule (e.expiresAt, [this, dest] {
    auto it = m_entries.find (dest);
    if (it != m_entries.end ())
      {
        it->second.valid = false;
        it->second.lifetimeTimer = EventId{};
      }
  });
}

bool
RoutingTable::UpdateRoute (NodeId dest, uint32_t seq, NodeId nextHop, uint8_t hops)
{
  auto it = m_entries.find (dest);
  bool accept = false;
  if (it == m_entries.end ())
    {
      it = m_entries.emplace (dest, RouteEntry{}).first;
      it->second.dest = dest;
      accept = true;
    }
  else
    {
      const RouteEntry &e = it->second;
      accept = seq > e.destSeq || (seq == e.destSeq && (!e.valid || hops < e.hopCount));
    }
  if (!accept)
    {
      return false;
    }
  RouteEntry &e = it->second;
  e.destSeq = seq;
  e.nextHop = nextHop;
  e.hopCount = hops;
  e.valid = true;
  ++e.generation;
  Arm (e);
  if (m_onInstall)
    {
      m_onInstall (e);
    }
  return true;
}

const RouteEntry *
RoutingTable::Lookup (NodeId dest) const
{
  auto it = m_entries.find (dest);
  return it == m_entries.end () ? nullptr : &it->second;
}

const RouteEntry *
RoutingTable::LookupValid (NodeId dest) const
{
  const RouteEntry *e = Lookup (dest);
  return e != nullptr && e->valid ? e : nullptr;
}

void
RoutingTable::Refresh (NodeId dest)
{
  auto it = m_entries.find (dest);
  if (it != m_entries.end () && it->second.valid)
    {
      Arm (it->second);
    }
}

bool
RoutingTable::Invalidate (NodeId dest)
{
  auto it = m_entries.find (dest);
  if (it == m_entries.end () || !it->second.valid)
    {
      return false;
    }
  it->second.valid = false;
  m_sim.Cancel (it->second.lifetimeTimer);
  it->second.lifetimeTimer = EventId{};
  return true;
}

std::vector<RouteEntry>
RoutingTable::InvalidateVia (NodeId nextHop)
{
  std::vector<RouteEntry> out;
  for (auto &[dest, e] : m_entries)
    {
      if (e.valid && e.nextHop == nextHop)
        {
          e.valid = false;
          m_sim.Cancel (e.lifetimeTimer);
          e.lifetimeTimer = EventId{};
          out.push_back (e);
        }
    }
  return out;
}

void
RoutingTable::AddPrecursor (NodeId dest, NodeId precursor)
{
  auto it = m_entries.find (dest);
  if (it != m_entries.end ())
    {
      it->second.precursors.insert (precursor);
    }
}

void
RoutingTable::TamperNextHop (NodeId dest, NodeId nextHop)
{
  auto it = m_entries.find (dest);
  if (it != m_entries.end ())
    {
      it->second.nextHop = nextHop;
    }
}

SeenRreqCache::SeenRreqCache (Simulator &sim, SimTime lifetime) : m_sim (sim), m_lifetime (lifetime) {}

SeenRreqCache::~SeenRreqCache ()
{
  for (auto &[key, e] : m_entries)
    {
      m_sim.Cancel (e.expiry);
    }
}

const SeenRreq *
SeenRreqCache::Find (NodeId src, uint32_t bcastId) const
{
  auto it = m_entries.find ({src, bcastId});
  return it == m_entries.end () ? nullptr : &it->second;
}

const SeenRreq *
SeenRreqCache::FindLatest (NodeId src, NodeId dest) const
{
  const SeenRreq *best = nullptr;
  for (auto it = m_entries.lower_bound ({src, 0}); it != m_entries.end () && it->first.first == src; ++it)
    {
      if (it->second.originalDest == dest)
        {
          best = &it->second;
        }
    }
  return best;
}

bool
SeenRreqCache::Insert (NodeId prevHop, const RreqPacket &rreq)
{
  auto key = std::make_pair (rreq.src, rreq.bcastId);
  if (m_entries.contains (key))
    {
      return false;
    }
  SeenRreq e;
  e.prevHop = prevHop;
  e.originalDest = rreq.dest;
  e.copy = rreq;
  e.expiry = m_sim.ScheduleIn (m_lifetime, [this, key] { m_entries.erase (key); });
  m_entries.emplace (key, std::move (e));
  return true;
}

} // namespace manet
