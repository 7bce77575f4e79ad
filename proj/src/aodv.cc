#include "manet/aodv.h"

#include <algorithm>

namespace manet {

namespace {

bool
Contains (const std::vector<NodeId> &v, NodeId n)
{
  return std::find (v.begin (), v.end (), n) != v.end ();
}

} // namespace

AodvAgent::AodvAgent (NodeId id, NodeEnv &env, ProtocolKind protocol, const AodvConfig &cfg,
                      const SdAodvConfig &sdCfg, RngStream jitter)
  : m_id (id),
    m_env (env),
    m_protocol (protocol),
    m_cfg (cfg),
    m_sdCfg (sdCfg),
    m_jitter (std::move (jitter)),
    m_routes (env.Sim (), cfg.routeLifetime),
    m_seen (env.Sim (), cfg.seenRreqLifetime)
{
  m_routes.SetInstallHook ([this] (const RouteEntry &e) { m_env.RouteInstalled (m_id, e); });
}

AodvAgent::~AodvAgent ()
{
  for (auto &[dest, d] : m_discoveries)
    {
      Sim ().Cancel (d.timer);
    }
  for (auto &[id, v] : m_verifications)
    {
      Sim ().Cancel (v.timer);
    }
}

size_t
AodvAgent::BufferedCount (NodeId dest) const
{
  auto it = m_buffers.find (dest);
  return it == m_buffers.end () ? 0 : it->second.size ();
}

size_t
AodvAgent::BufferedTotal () const
{
  size_t n = 0;
  for (const auto &[dest, q] : m_buffers)
    {
      n += q.size ();
    }
  return n;
}

void
AodvAgent::Receive (const Frame &frame)
{
  NodeId prev = frame.src;
  std::visit (
      [&] (const auto &p) {
        using T = std::decay_t<decltype (p)>;
        if constexpr (std::is_same_v<T, RreqPacket>)
          {
            HandleRreq (p, prev);
          }
        else if constexpr (std::is_same_v<T, RrepPacket>)
          {
            HandleRrep (p, prev);
          }
        else if constexpr (std::is_same_v<T, RerrPacket>)
          {
            HandleRerr (p, prev);
          }
        else if constexpr (std::is_same_v<T, DataPacket>)
          {
            HandleData (p, prev);
          }
        else
          {
            HandleProbe (p, prev);
          }
      },
      frame.payload);
}

void
AodvAgent::ReceiveTunneled (const RreqPacket &rreq)
{
  if (m_behavior)
    {
      m_behavior->OnTunneledRreq (*this, rreq);
    }
}

void
AodvAgent::Unicast (NodeId to, Packet p)
{
  m_env.Send (m_id, to, std::move (p));
}

void
AodvAgent::BroadcastRreq (RreqPacket rreq, bool jitter)
{
  if (jitter && m_cfg.broadcastJitter.GetMicros () > 0)
    {
      auto delay = SimTime::Micros (static_cast<int64_t> (
          m_jitter.UniformInt (static_cast<uint64_t> (m_cfg.broadcastJitter.GetMicros ()) + 1)));
      Sim ().ScheduleIn (delay, [this, rreq = std::move (rreq)] { m_env.Send (m_id, kBroadcast, rreq); });
      return;
    }
  m_env.Send (m_id, kBroadcast, std::move (rreq));
}

void
AodvAgent::RecordFlag (NodeId suspect, AttackKind kind)
{
  if (m_suspects.Flag (suspect, kind, Sim ().Now ()))
    {
      m_env.SuspectFlagged (m_id, suspect, kind);
    }
  m_routes.InvalidateVia (suspect);
}

std::vector<NodeId>
AodvAgent::ExclusionFor (const std::vector<NodeId> &incoming) const
{
  std::vector<NodeId> out = incoming;
  for (const auto &[n, rec] : m_suspects.All ())
    {
      out.push_back (n);
    }
  std::sort (out.begin (), out.end ());
  out.erase (std::unique (out.begin (), out.end ()), out.end ());
  if (out.size () > 255)
    {
      out.resize (255);
    }
  return out;
}

RreqPacket
AodvAgent::ForwardedCopy (const RreqPacket &in) const
{
  RreqPacket out = in;
  out.ttl = in.ttl > 0 ? in.ttl - 1 : 0;
  out.hopCount = in.hopCount + 1;
  if (Secure ())
    {
      out.excluded = ExclusionFor (in.excluded);
    }
  return out;
}

bool
AodvAgent::InstallRoute (NodeId dest, uint32_t seq, NodeId nextHop, uint8_t hops)
{
  if (!m_routes.UpdateRoute (dest, seq, nextHop, hops))
    {
      return false;
    }
  if (m_buffers.contains (dest))
    {
      FlushBuffer (dest);
    }
  return true;
}

// Route discovery.

bool
AodvAgent::OriginateRouteDiscovery (NodeId dest, std::vector<NodeId> excluded)
{
  if (m_discoveries.contains (dest))
    {
      return false;
    }
  Discovery &d = m_discoveries[dest];
  d.excluded = std::move (excluded);
  SendRreq (dest, d.excluded);
  return true;
}

void
AodvAgent::SendRreq (NodeId dest, const std::vector<NodeId> &excluded)
{
  ++m_ownSeq;
  ++m_bcastId;
  RreqPacket rreq;
  rreq.src = m_id;
  rreq.dest = dest;
  rreq.srcSeq = m_ownSeq;
  const RouteEntry *known = m_routes.Lookup (dest);
  rreq.destSeq = known ? known->destSeq : 0;
  rreq.bcastId = m_bcastId;
  rreq.ttl = m_cfg.initialTtl;
  rreq.hopCount = 0;
  if (Secure ())
    {
      rreq.digest = ComputeDigest (dest);
      rreq.excluded = ExclusionFor (excluded);
    }
  m_seen.Insert (m_id, rreq);
  ++m_counters.rreqOriginated;
  BroadcastRreq (rreq, false);
  m_discoveries[dest].timer = Sim ().ScheduleIn (m_cfg.discoveryTimeout, [this, dest] { DiscoveryTimeout (dest); });
}

void
AodvAgent::DiscoveryTimeout (NodeId dest)
{
  auto it = m_discoveries.find (dest);
  if (it == m_discoveries.end ())
    {
      return;
    }
  it->second.timer = EventId{};
  if (m_routes.LookupValid (dest))
    {
      FlushBuffer (dest);
      return;
    }
  if (it->second.retries < m_cfg.discoveryRetries)
    {
      ++it->second.retries;
      SendRreq (dest, it->second.excluded);
      return;
    }
  m_discoveries.erase (it);
  DropBuffer (dest, DropReason::NoRoute);
}

RreqAction
AodvAgent::HandleRreq (RreqPacket rreq, NodeId prevHop)
{
  auto done = [&] (RreqAction a) {
    m_env.RreqHandled (m_id, rreq, prevHop, a);
    return a;
  };

  if (Secure ())
    {
      if (IsSuspect (prevHop) || Contains (rreq.excluded, prevHop))
        {
          return done (RreqAction::Discard);
        }
      bool before = IsSuspect (prevHop);
      DigestCheck check = VerifyRreqDigest (rreq, prevHop, m_seen, m_suspects, Sim ().Now ());
      if (!before && IsSuspect (prevHop))
        {
          m_env.SuspectFlagged (m_id, prevHop, AttackKind::Wormhole);
          m_routes.InvalidateVia (prevHop);
        }
      if (check == DigestCheck::TamperedRestored)
        {
          ++m_counters.digestRestored;
        }
      if (check == DigestCheck::TamperedDropped)
        {
          ++m_counters.digestDrops;
          m_env.RouteError (m_id);
          return done (RreqAction::Dropped);
        }
    }

  if (m_behavior)
    {
      if (auto a = m_behavior->OnRreq (*this, rreq, prevHop))
        {
          return done (*a);
        }
    }

  if (rreq.src == m_id || !m_seen.Insert (prevHop, rreq))
    {
      return done (RreqAction::Discard);
    }
  InstallRoute (rreq.src, rreq.srcSeq, prevHop, rreq.hopCount + 1);

  if (rreq.dest == m_id)
    {
      ++m_ownSeq;
      RrepPacket rrep;
      rrep.src = rreq.src;
      rrep.dest = m_id;
      rrep.destSeq = std::max (m_ownSeq, rreq.destSeq);
      m_ownSeq = rrep.destSeq;
      rrep.hopCount = 0;
      rrep.originator = m_id;
      rrep.lifetimeMs = static_cast<uint32_t> (m_cfg.routeLifetime.GetMicros () / 1000);
      rrep.claimedNextHop = m_id;
      ++m_counters.rrepOriginated;
      Unicast (prevHop, rrep);
      return done (RreqAction::Reply);
    }

  const RouteEntry *route = m_routes.LookupValid (rreq.dest);
  if (route && route->destSeq >= rreq.destSeq && route->nextHop != prevHop &&
      !(Secure () && (IsSuspect (route->nextHop) || Contains (rreq.excluded, route->nextHop))))
    {
      RrepPacket rrep;
      rrep.src = rreq.src;
      rrep.dest = rreq.dest;
      rrep.destSeq = route->destSeq;
      rrep.hopCount = route->hopCount;
      rrep.originator = m_id;
      rrep.lifetimeMs = static_cast<uint32_t> ((route->expiresAt - Sim ().Now ()).GetMicros () / 1000);
      rrep.claimedNextHop = route->nextHop;
      m_routes.AddPrecursor (rreq.dest, prevHop);
      ++m_counters.rrepOriginated;
      Unicast (prevHop, rrep);
      return done (RreqAction::Reply);
    }

  if (rreq.ttl == 0)
    {
      return done (RreqAction::Discard);
    }
  ++m_counters.rreqForwarded;
  BroadcastRreq (ForwardedCopy (rreq), true);
  return done (RreqAction::Forward);
}

// Route replies.

RrepAction
AodvAgent::HandleRrep (RrepPacket rrep, NodeId prevHop)
{
  if (Secure () && IsSuspect (prevHop))
    {
      return RrepAction::Discard;
    }
  if (m_behavior && m_behavior->OnRrep (*this, rrep, prevHop))
    {
      return RrepAction::Discard;
    }
  // Replies built from a cached route are checked by the first hop that
  // receives them; the destination's own reply needs no check.
  if (Secure () && rrep.originator != rrep.dest && prevHop == rrep.originator)
    {
      StartVerification (rrep, prevHop);
      return RrepAction::Verifying;
    }
  return ContinueRrep (rrep, prevHop);
}

RrepAction
AodvAgent::ContinueRrep (RrepPacket rrep, NodeId prevHop)
{
  uint8_t hops = rrep.hopCount + 1;
  bool updated = InstallRoute (rrep.dest, rrep.destSeq, prevHop, hops);
  if (rrep.src == m_id)
    {
      return updated ? RrepAction::InstallDeliver : RrepAction::Discard;
    }
  if (!updated)
    {
      return RrepAction::Discard;
    }
  const RouteEntry *reverse = m_routes.LookupValid (rrep.src);
  if (reverse == nullptr)
    {
      return RrepAction::Discard;
    }
  m_routes.AddPrecursor (rrep.dest, reverse->nextHop);
  m_routes.AddPrecursor (rrep.src, prevHop);
  rrep.hopCount = hops;
  ++m_counters.rrepForwarded;
  Unicast (reverse->nextHop, rrep);
  return RrepAction::InstallForward;
}

void
AodvAgent::StartVerification (const RrepPacket &rrep, NodeId prevHop)
{
  uint16_t id = m_nextProbeId++;
  if (m_nextProbeId == 0)
    {
      m_nextProbeId = 1;
    }
  PendingVerification &pv = m_verifications[id];
  pv.rrep = rrep;
  pv.prevHop = prevHop;
  pv.timer = Sim ().ScheduleIn (m_sdCfg.probeTimeout, [this, id] { FinishVerification (id, false); });

  if (rrep.claimedNextHop == m_id)
    {
      bool known = m_routes.Lookup (rrep.dest) != nullptr;
      Sim ().ScheduleIn (SimTime{}, [this, id, known] { FinishVerification (id, known); });
      return;
    }
  ProbePacket probe;
  probe.probeId = id;
  probe.requester = m_id;
  probe.target = rrep.claimedNextHop;
  probe.dest = rrep.dest;
  ++m_counters.probesSent;
  Unicast (rrep.claimedNextHop, probe);
}

void
AodvAgent::FinishVerification (uint16_t probeId, bool confirmed)
{
  auto it = m_verifications.find (probeId);
  if (it == m_verifications.end ())
    {
      return;
    }
  Sim ().Cancel (it->second.timer);
  PendingVerification pv = std::move (it->second);
  m_verifications.erase (it);
  if (confirmed)
    {
      ContinueRrep (pv.rrep, pv.prevHop);
      return;
    }
  ++m_counters.rrepRejected;
  RecordFlag (pv.rrep.originator, AttackKind::Blackhole);
  if (pv.rrep.src == m_id)
    {
      return; // the pending discovery timer retries without the flagged node
    }
  if (const SeenRreq *cached = m_seen.FindLatest (pv.rrep.src, pv.rrep.dest))
    {
      RreqPacket copy = cached->copy;
      copy.dest = cached->originalDest;
      if (copy.ttl > 0)
        {
          ++m_counters.rreqForwarded;
          BroadcastRreq (ForwardedCopy (copy), true);
        }
    }
}

void
AodvAgent::AbandonVerification (uint16_t probeId)
{
  auto it = m_verifications.find (probeId);
  if (it == m_verifications.end ())
    {
      return;
    }
  Sim ().Cancel (it->second.timer);
  m_verifications.erase (it);
  ++m_counters.verificationsAbandoned;
}

void
AodvAgent::HandleProbe (const ProbePacket &probe, NodeId prevHop)
{
  if (m_behavior && m_behavior->OnProbe (*this, probe, prevHop))
    {
      return;
    }
  if (!probe.isReply)
    {
      if (probe.target == m_id)
        {
          ProbePacket reply = probe;
          reply.isReply = true;
          reply.confirmed = probe.dest == m_id || m_routes.Lookup (probe.dest) != nullptr;
          Unicast (prevHop, reply);
        }
      else if (probe.requester != m_id)
        {
          Unicast (probe.target, probe);
        }
      return;
    }
  if (probe.requester == m_id)
    {
      FinishVerification (probe.probeId, probe.confirmed);
    }
  else
    {
      Unicast (probe.requester, probe);
    }
}

// Data forwarding.

SendResult
AodvAgent::SendData (DataPacket pkt)
{
  pkt.trace.assign (1, m_id);
  pkt.hopBudget = m_cfg.dataHopBudget;
  if (const RouteEntry *route = m_routes.LookupValid (pkt.dest))
    {
      SendViaRoute (std::move (pkt), *route);
      return SendResult::Forwarded;
    }
  NodeId dest = pkt.dest;
  Buffer (std::move (pkt));
  return OriginateRouteDiscovery (dest) ? SendResult::BufferedDiscovery : SendResult::Buffered;
}

void
AodvAgent::SendViaRoute (DataPacket pkt, const RouteEntry &route)
{
  if (pkt.hopBudget == 0)
    {
      m_env.DataDropped (m_id, pkt, DropReason::TtlExhausted);
      return;
    }
  --pkt.hopBudget;
  NodeId next = route.nextHop;
  if (Secure ())
    {
      m_shadow.Record (pkt.dest, next, Sim ().Now (), route.generation);
    }
  m_routes.Refresh (pkt.dest);
  Unicast (next, std::move (pkt));
}

void
AodvAgent::Buffer (DataPacket pkt)
{
  auto &q = m_buffers[pkt.dest];
  while (!q.empty () && q.size () >= m_cfg.bufferLimit)
    {
      m_env.DataDropped (m_id, q.front (), DropReason::BufferOverflow);
      q.pop_front ();
    }
  q.push_back (std::move (pkt));
}

void
AodvAgent::FlushBuffer (NodeId dest)
{
  auto d = m_discoveries.find (dest);
  if (d != m_discoveries.end ())
    {
      Sim ().Cancel (d->second.timer);
      m_discoveries.erase (d);
    }
  auto it = m_buffers.find (dest);
  if (it == m_buffers.end ())
    {
      return;
    }
  std::deque<DataPacket> q = std::move (it->second);
  m_buffers.erase (it);
  for (auto &pkt : q)
    {
      if (const RouteEntry *route = m_routes.LookupValid (dest))
        {
          SendViaRoute (std::move (pkt), *route);
        }
      else
        {
          Buffer (std::move (pkt));
        }
    }
  if (m_buffers.contains (dest))
    {
      OriginateRouteDiscovery (dest);
    }
}

void
AodvAgent::DropBuffer (NodeId dest, DropReason why)
{
  auto it = m_buffers.find (dest);
  if (it == m_buffers.end ())
    {
      return;
    }
  std::deque<DataPacket> q = std::move (it->second);
  m_buffers.erase (it);
  for (const auto &pkt : q)
    {
      m_env.DataDropped (m_id, pkt, why);
    }
}

DataAction
AodvAgent::HandleData (DataPacket data, NodeId prevHop)
{
  data.trace.push_back (m_id);
  if (m_behavior)
    {
      if (auto a = m_behavior->OnData (*this, data, prevHop))
        {
          return *a;
        }
    }
  if (data.dest == m_id)
    {
      m_env.DataDelivered (m_id, data);
      return DataAction::Deliver;
    }

  const RouteEntry *route = m_routes.LookupValid (data.dest);
  if (Secure ())
    {
      // Only a packet we would hand straight back counts as looped, so a
      // stale shadow after an honest route change cannot cause a false flag.
      if (route && route->nextHop == prevHop && IsLoopedBack (data.dest, prevHop, m_shadow))
        {
          HandleLoopedData (std::move (data), prevHop);
          return DataAction::Rerouting;
        }
      if (route)
        {
          NodeId injector = route->nextHop;
          bool before = IsSuspect (injector);
          if (VerifyNextHop (data.dest, m_routes, m_shadow, m_suspects, injector, Sim ().Now ())
                  == NextHopCheck::Restored
              && !before)
            {
              m_env.SuspectFlagged (m_id, injector, AttackKind::Byzantine);
            }
          route = m_routes.LookupValid (data.dest);
        }
    }

  if (route == nullptr || (Secure () && route->nextHop == prevHop))
    {
      const RouteEntry *stale = m_routes.Lookup (data.dest);
      SendRerr ({UnreachableDest{data.dest, stale ? stale->destSeq : 0}}, {prevHop});
      m_env.DataDropped (m_id, data, DropReason::NoRoute);
      return DataAction::Rerr;
    }
  m_routes.AddPrecursor (data.dest, prevHop);
  ++m_counters.dataForwarded;
  SendViaRoute (std::move (data), *route);
  return DataAction::Forward;
}

void
AodvAgent::HandleLoopedData (DataPacket data, NodeId prevHop)
{
  RecordFlag (prevHop, AttackKind::Byzantine);
  NodeId dest = data.dest;
  Buffer (std::move (data));
  OriginateRouteDiscovery (dest);
}

// Route errors.

void
AodvAgent::SendRerr (std::vector<UnreachableDest> dests, std::set<NodeId> targets)
{
  targets.erase (m_id);
  if (dests.empty () || targets.empty ())
    {
      return;
    }
  ++m_counters.rerrGenerated;
  m_env.RouteError (m_id);
  RerrPacket rerr{std::move (dests)};
  if (targets.size () == 1)
    {
      Unicast (*targets.begin (), std::move (rerr));
    }
  else
    {
      m_env.Send (m_id, kBroadcast, std::move (rerr));
    }
}

void
AodvAgent::ReportUnreachable (NodeId dest, NodeId to)
{
  const RouteEntry *e = m_routes.Lookup (dest);
  SendRerr ({UnreachableDest{dest, e != nullptr ? e->destSeq : 0}}, {to});
}

size_t
AodvAgent::HandleRerr (const RerrPacket &rerr, NodeId prevHop)
{
  if (Secure () && IsSuspect (prevHop))
    {
      return 0;
    }
  std::vector<UnreachableDest> lost;
  std::set<NodeId> targets;
  for (const auto &u : rerr.unreachable)
    {
      // The replier withdrew the route it offered, so the check has nothing
      // left to judge.
      std::vector<uint16_t> withdrawn;
      for (const auto &[id, v] : m_verifications)
        {
          if (v.prevHop == prevHop && v.rrep.dest == u.dest)
            {
              withdrawn.push_back (id);
            }
        }
      for (uint16_t id : withdrawn)
        {
          AbandonVerification (id);
        }
      const RouteEntry *e = m_routes.LookupValid (u.dest);
      if (e == nullptr || e->nextHop != prevHop)
        {
          continue;
        }
      targets.insert (e->precursors.begin (), e->precursors.end ());
      lost.push_back (UnreachableDest{u.dest, std::max (u.destSeq, e->destSeq)});
      m_routes.Invalidate (u.dest);
    }
  size_t n = lost.size ();
  SendRerr (std::move (lost), std::move (targets));
  return n;
}

void
AodvAgent::LinkFailure (const Frame &frame)
{
  std::vector<UnreachableDest> lost;
  std::set<NodeId> targets;
  const auto *probe = std::get_if<ProbePacket> (&frame.payload);
  if (probe != nullptr)
    {
      if (probe->isReply)
        {
          return;
        }
      if (probe->requester == m_id)
        {
          auto it = m_verifications.find (probe->probeId);
          if (it == m_verifications.end ())
            {
              return;
            }
          // The claimed next hop is not our neighbour: ask via the replier
          // instead. If the replier is gone too the RREP is useless anyway.
          if (frame.linkDst != it->second.prevHop)
            {
              Unicast (it->second.prevHop, *probe);
            }
          else
            {
              AbandonVerification (probe->probeId);
            }
          return;
        }
      // We replied from a route whose next hop has since left. Tell the
      // requester so it drops the RREP instead of waiting out the probe.
      const RouteEntry *e = m_routes.Lookup (probe->dest);
      if (e == nullptr || e->nextHop != frame.linkDst || !e->valid)
        {
          lost.push_back (UnreachableDest{probe->dest, e != nullptr ? e->destSeq : 0});
        }
      targets.insert (probe->requester);
    }
  std::vector<RouteEntry> broken = m_routes.InvalidateVia (frame.linkDst);
  for (const auto &e : broken)
    {
      lost.push_back (UnreachableDest{e.dest, e.destSeq});
      targets.insert (e.precursors.begin (), e.precursors.end ());
    }
  const auto *data = std::get_if<DataPacket> (&frame.payload);
  if (data == nullptr)
    {
      SendRerr (std::move (lost), std::move (targets));
      return;
    }
  if (data->src == m_id)
    {
      DataPacket pkt = *data;
      pkt.hopBudget = m_cfg.dataHopBudget;
      NodeId dest = pkt.dest;
      Buffer (std::move (pkt));
      OriginateRouteDiscovery (dest);
    }
  else
    {
      if (data->trace.size () >= 2)
        {
          targets.insert (data->trace[data->trace.size () - 2]);
        }
      if (lost.empty ())
        {
          const RouteEntry *e = m_routes.Lookup (data->dest);
          lost.push_back (UnreachableDest{data->dest, e ? e->destSeq : 0});
        }
      m_env.DataDropped (m_id, *data, DropReason::LinkDrop);
    }
  SendRerr (std::move (lost), std::move (targets));
}

} // namespace manet
