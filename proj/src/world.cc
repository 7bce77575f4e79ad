#include "manet/world.h"

#include "manet/adversary.h"

#include <set>
#include <stdexcept>
#include <string>

namespace manet {

World::World (const ScenarioConfig &cfg, WorldOptions opts)
  : m_cfg (cfg), m_opts (opts), m_mobilityRng (cfg.seed, "mobility")
{
  ValidateScenario (m_cfg);
  const uint32_t k = m_cfg.nodeCount;

  if (m_cfg.placement == PlacementKind::Explicit)
    {
      for (NodeId id = 0; id < k; ++id)
        {
          Vec2 p = m_cfg.positions[id];
          m_positions.push_back (NodePosition{id, p, p, 0.0});
        }
    }
  else
    {
      RngStream placement (m_cfg.seed, "placement");
      m_positions = PlaceUniform (k, m_cfg.terrain, placement);
    }

  BuildFlows ();
  AssignAdversaries ();

  m_medium = std::make_unique<Medium> (m_sim, m_cfg.medium, RngStream (m_cfg.seed, "medium"), m_positions);
  Medium::Handlers h;
  h.deliver = [this] (NodeId rx, const Frame &f) {
    CountFrame (m_counters[rx], f.payload, f.sizeBytes, false);
    m_agents[rx]->Receive (f);
  };
  h.linkFailure = [this] (const Frame &f) {
    // Defer so the sender never re-enters its own send path.
    m_sim.ScheduleIn (SimTime{}, [this, f] { m_agents[f.src]->LinkFailure (f); });
  };
  h.queueDrop = [this] (const Frame &f) {
    if (const auto *d = std::get_if<DataPacket> (&f.payload))
      {
        DataDropped (f.src, *d, DropReason::BufferOverflow);
      }
  };
  m_medium->SetHandlers (std::move (h));

  m_counters.resize (k);
  std::set<NodeId> bad (m_malicious.begin (), m_malicious.end ());
  std::vector<NodeId> honest;
  for (NodeId id = 0; id < k; ++id)
    {
      if (!bad.contains (id))
        {
          honest.push_back (id);
        }
    }
  for (NodeId id = 0; id < k; ++id)
    {
      auto agent = std::make_unique<AodvAgent> (id, *this, m_cfg.protocol, m_cfg.aodv, m_cfg.sdaodv,
                                                RngStream (m_cfg.seed, "jitter/" + std::to_string (id)));
      if (bad.contains (id))
        {
          switch (m_cfg.attack.kind)
            {
            case AttackKind::Wormhole:
              agent->SetBehavior (std::make_unique<WormholeBehavior> (
                  m_partners.at (id), m_cfg.attack.tunnelEnabled, m_cfg.attack.decoy, honest,
                  RngStream (m_cfg.seed, "decoy/" + std::to_string (id))));
              break;
            case AttackKind::Byzantine:
              agent->SetBehavior (std::make_unique<ByzantineBehavior> ());
              break;
            case AttackKind::Blackhole:
              agent->SetBehavior (std::make_unique<BlackholeBehavior> (m_cfg.attack.seqInflation, m_cfg.attack.blackholeRerr));
              break;
            case AttackKind::None:
              break;
            }
        }
      m_agents.push_back (std::move (agent));
    }

  ScheduleTraffic ();
  if (m_cfg.mobility.model == MobilityModel::Waypoint)
    {
      SimTime tick = SimTime::Seconds (m_cfg.mobility.tick);
      if (tick.GetMicros () > 0 && tick.GetSeconds () <= m_cfg.simDuration)
        {
          m_sim.Schedule (tick, [this] { MobilityTick (); });
        }
    }
}

World::~World ()
{
  // Agents own timers in m_sim; drop them while the simulator still exists.
  m_agents.clear ();
}

void
World::BuildFlows ()
{
  const TrafficConfig &t = m_cfg.traffic;
  double interval = 1.0 / t.rate;
  auto add = [&] (NodeId s, NodeId d) {
    CbrFlow f;
    f.id = static_cast<uint32_t> (m_flows.size ());
    f.src = s;
    f.dest = d;
    f.packetSize = t.packetSize;
    f.interval = interval;
    f.start = t.start;
    f.stop = t.stop;
    m_flows.push_back (f);
  };
  if (!t.explicitFlows.empty ())
    {
      for (const auto &[s, d] : t.explicitFlows)
        {
          add (s, d);
        }
      return;
    }
  RngStream rng (m_cfg.seed, "traffic");
  std::set<std::pair<NodeId, NodeId>> used;
  const uint32_t k = m_cfg.nodeCount;
  while (m_flows.size () < t.flows)
    {
      auto s = static_cast<NodeId> (rng.UniformInt (k));
      auto d = static_cast<NodeId> (rng.UniformInt (k - 1));
      if (d >= s)
        {
          ++d;
        }
      if (used.emplace (s, d).second)
        {
          add (s, d);
        }
    }
}

void
World::AssignAdversaries ()
{
  const AttackProfile &a = m_cfg.attack;
  if (a.kind == AttackKind::None)
    {
      return;
    }
  std::set<NodeId> endpoints;
  for (const auto &f : m_flows)
    {
      endpoints.insert (f.src);
      endpoints.insert (f.dest);
    }
  if (!a.explicitNodes.empty ())
    {
      for (NodeId n : a.explicitNodes)
        {
          if (endpoints.contains (n))
            {
              throw ConfigError ("attack.explicit_nodes", "node " + std::to_string (n) + " is a traffic endpoint");
            }
        }
      m_malicious = a.explicitNodes;
    }
  else
    {
      RngStream rng (m_cfg.seed, "adversary-assignment");
      try
        {
          m_malicious = AssignMalicious (m_cfg.nodeCount, a, rng, endpoints);
        }
      catch (const std::invalid_argument &e)
        {
          throw ConfigError ("attack.malicious_fraction", e.what ());
        }
    }
  if (a.kind != AttackKind::Wormhole)
    {
      return;
    }
  if (!a.tunnelPairs.empty ())
    {
      std::set<NodeId> members (m_malicious.begin (), m_malicious.end ());
      for (const auto &[x, y] : a.tunnelPairs)
        {
          if (!members.contains (x) || !members.contains (y))
            {
              throw ConfigError ("attack.tunnel_pairs", "tunnel endpoints must be malicious nodes");
            }
          m_partners[x] = y;
          m_partners[y] = x;
        }
      for (NodeId m : m_malicious)
        {
          m_partners.emplace (m, m);
        }
    }
  else
    {
      m_partners = PairTunnels (m_malicious);
    }
}

void
World::ScheduleTraffic ()
{
  SimTime end = SimTime::Seconds (m_cfg.simDuration);
  for (const CbrFlow &f : m_flows)
    {
      uint32_t seq = 0;
      for (SimTime t : CbrSendTimes (f))
        {
          if (t > end)
            {
              break;
            }
          m_sim.Schedule (t, [this, f, seq] {
            DataPacket pkt;
            pkt.flowId = f.id;
            pkt.seq = seq;
            pkt.src = f.src;
            pkt.dest = f.dest;
            pkt.sentAt = m_sim.Now ();
            pkt.payloadSize = f.packetSize;
            m_ledger.Generated (f.id, seq, pkt.sentAt);
            m_counters[f.src][NodeCounter::DataOriginated] += 1;
            m_agents[f.src]->SendData (std::move (pkt));
          });
          ++seq;
        }
    }
}

void
World::MobilityTick ()
{
  double dt = m_cfg.mobility.tick;
  for (auto &p : m_positions)
    {
      p = AdvanceMobility (p, dt, m_cfg.terrain, m_cfg.mobility.speeds, m_mobilityRng);
      if (m_opts.recordMobility)
        {
          m_mobilityTrace.push_back (MobilitySample{m_sim.Now (), p.id, p.pos});
        }
    }
  SimTime next = m_sim.Now () + SimTime::Seconds (dt);
  if (next <= SimTime::Seconds (m_cfg.simDuration))
    {
      m_sim.Schedule (next, [this] { MobilityTick (); });
    }
}

void
World::MoveNode (NodeId id, Vec2 to)
{
  NodePosition &p = m_positions.at (id);
  p.pos = to;
  p.waypoint = to;
}

void
World::Run ()
{
  if (m_ran)
    {
      throw std::logic_error ("World::Run called twice");
    }
  m_ran = true;
  m_sim.RunUntil (SimTime::Seconds (m_cfg.simDuration));
}

MetricsReport
World::Report () const
{
  std::vector<NodeCounters> nodes = m_counters;
  for (NodeId id = 0; id < nodes.size (); ++id)
    {
      nodes[id][NodeCounter::DataForwarded] = m_agents[id]->Counters ().dataForwarded;
    }
  return BuildReport (m_ledger, std::move (nodes), m_cfg.simDuration, m_hash);
}

void
World::Mix (uint64_t v)
{
  for (int i = 0; i < 8; ++i)
    {
      m_hash ^= (v >> (8 * i)) & 0xFF;
      m_hash *= 0x100000001b3ull;
    }
}

void
World::Send (NodeId from, NodeId linkDst, Packet p)
{
  CountFrame (m_counters[from], p, FrameSize (p), true);
  m_medium->Transmit (from, linkDst, std::move (p));
}

void
World::DataDelivered (NodeId at, const DataPacket &p)
{
  if (m_ledger.Delivered (p.flowId, p.seq, m_sim.Now (), p.trace))
    {
      m_counters[at][NodeCounter::DataDelivered] += 1;
      Mix (1);
      Mix ((static_cast<uint64_t> (p.flowId) << 32) | p.seq);
      Mix (static_cast<uint64_t> (m_sim.Now ().GetMicros ()));
    }
}

void
World::DataDropped (NodeId at, const DataPacket &p, DropReason why)
{
  if (m_ledger.Dropped (p.flowId, p.seq, why, p.trace))
    {
      m_counters[at][NodeCounter::DataDropped] += 1;
      Mix (2);
      Mix ((static_cast<uint64_t> (p.flowId) << 32) | p.seq);
      Mix ((static_cast<uint64_t> (at) << 8) | static_cast<uint64_t> (why));
      Mix (static_cast<uint64_t> (m_sim.Now ().GetMicros ()));
    }
}

void
World::RouteError (NodeId at)
{
  m_counters[at][NodeCounter::RouteErrors] += 1;
  ++m_routeErrors;
}

void
World::SuspectFlagged (NodeId at, NodeId suspect, AttackKind kind)
{
  m_counters[at][NodeCounter::SuspectsFlagged] += 1;
  m_suspectEvents.push_back (SuspectEvent{m_sim.Now (), at, suspect, kind});
}

void
World::RreqHandled (NodeId at, const RreqPacket &p, NodeId prevHop, RreqAction a)
{
  if (m_opts.trackRreq && (a == RreqAction::Forward || a == RreqAction::Reply))
    {
      ++m_rreqAccepted[{at, p.src, p.bcastId}];
    }
}

void
World::Tunnel (NodeId from, NodeId to, const RreqPacket &p)
{
  m_sim.ScheduleIn (SimTime{}, [this, to, p] { m_agents[to]->ReceiveTunneled (p); });
}

void
World::RouteInstalled (NodeId at, const RouteEntry &e)
{
  if (!m_opts.trackRoutes)
    {
      return;
    }
  ++m_routeInstalls;
  auto [it, fresh] = m_lastSeq.emplace (std::make_pair (at, e.dest), e.destSeq);
  if (!fresh)
    {
      if (e.destSeq < it->second)
        {
          ++m_seqRegressions;
        }
      it->second = e.destSeq;
    }
}

} // namespace manet
