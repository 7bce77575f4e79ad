#include "manet/adversary.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace manet {

uint32_t
MaliciousCount (uint32_t k, double fractionPercent)
{
  if (!(fractionPercent >= 0.0 && fractionPercent < 100.0))
    {
      throw std::invalid_argument ("malicious_fraction must be in [0, 100)");
    }
  if (fractionPercent == 0.0)
    {
      return 0;
    }
  // The epsilon keeps exact halves such as 2.5 from rounding down after
  // binary floating point error.
  double x = fractionPercent * static_cast<double> (k) / 100.0;
  auto n = static_cast<uint32_t> (std::floor (x + 0.5 + 1e-9));
  return std::max<uint32_t> (n, 1);
}

std::vector<NodeId>
AssignMalicious (uint32_t k, const AttackProfile &profile, RngStream &rng, const std::set<NodeId> &endpoints)
{
  if (profile.kind == AttackKind::None)
    {
      return {};
    }
  uint32_t n = MaliciousCount (k, profile.maliciousFraction);
  if (n + 2 > k)
    {
      throw std::invalid_argument ("malicious_fraction leaves fewer than two honest nodes (" + std::to_string (n) +
                                   " of " + std::to_string (k) + ")");
    }
  std::vector<NodeId> pool;
  for (NodeId id = 0; id < k; ++id)
    {
      if (!endpoints.contains (id))
        {
          pool.push_back (id);
        }
    }
  if (n > pool.size ())
    {
      throw std::invalid_argument ("not enough non-endpoint nodes for " + std::to_string (n) + " malicious nodes");
    }
  for (uint32_t i = 0; i < n; ++i)
    {
      auto j = i + rng.UniformInt (pool.size () - i);
      std::swap (pool[i], pool[j]);
    }
  pool.resize (n);
  return pool;
}

std::map<NodeId, NodeId>
PairTunnels (const std::vector<NodeId> &members)
{
  std::map<NodeId, NodeId> partner;
  if (members.empty ())
    {
      return partner;
    }
  if (members.size () == 1)
    {
      partner[members[0]] = members[0];
      return partner;
    }
  size_t i = 0;
  for (; i + 1 < members.size (); i += 2)
    {
      partner[members[i]] = members[i + 1];
      partner[members[i + 1]] = members[i];
    }
  if (i < members.size ())
    {
      partner[members[i]] = members[0];
    }
  return partner;
}

WormholeBehavior::WormholeBehavior (NodeId partner, bool tunnel, DecoyMode decoy, std::vector<NodeId> honest,
                                    RngStream rng)
  : m_partner (partner), m_tunnel (tunnel), m_decoy (decoy), m_honest (std::move (honest)), m_rng (std::move (rng))
{
}

NodeId
WormholeBehavior::PickDecoy (NodeId realDest)
{
  if (m_decoy == DecoyMode::RandomHonest && m_honest.size () > 1)
    {
      for (;;)
        {
          NodeId d = m_honest[m_rng.UniformInt (m_honest.size ())];
          if (d != realDest)
            {
              return d;
            }
        }
    }
  return m_partner;
}

std::optional<RreqAction>
WormholeBehavior::OnRreq (AodvAgent &self, RreqPacket &rreq, NodeId prevHop)
{
  if (rreq.src == self.Id () || !self.Seen ().Insert (prevHop, rreq))
    {
      return RreqAction::Discard;
    }
  self.Routes ().UpdateRoute (rreq.src, rreq.srcSeq, prevHop, rreq.hopCount + 1);
  if (rreq.ttl == 0)
    {
      return RreqAction::Discard;
    }
  RreqPacket fwd = self.ForwardedCopy (rreq);
  fwd.dest = PickDecoy (rreq.dest);
  // Rushing: no rebroadcast jitter, so the rewritten copy wins the race.
  self.BroadcastRreq (fwd, false);
  if (m_tunnel && m_partner != self.Id ())
    {
      self.Env ().Tunnel (self.Id (), m_partner, fwd);
    }
  return RreqAction::Forward;
}

bool
WormholeBehavior::OnTunneledRreq (AodvAgent &self, const RreqPacket &rreq)
{
  if (!self.Seen ().Insert (m_partner, rreq))
    {
      return true;
    }
  self.BroadcastRreq (rreq, false);
  return true;
}

std::optional<DataAction>
ByzantineBehavior::OnData (AodvAgent &self, DataPacket &data, NodeId prevHop)
{
  if (data.dest == self.Id ())
    {
      return std::nullopt;
    }
  if (data.hopBudget == 0)
    {
      self.Env ().DataDropped (self.Id (), data, DropReason::TtlExhausted);
      return DataAction::Dropped;
    }
  --data.hopBudget;
  self.Routes ().TamperNextHop (data.dest, prevHop);
  self.Unicast (prevHop, data);
  return DataAction::Forward;
}

std::optional<RreqAction>
BlackholeBehavior::OnRreq (AodvAgent &self, RreqPacket &rreq, NodeId prevHop)
{
  if (rreq.src == self.Id () || !self.Seen ().Insert (prevHop, rreq))
    {
      return RreqAction::Discard;
    }
  self.Routes ().UpdateRoute (rreq.src, rreq.srcSeq, prevHop, rreq.hopCount + 1);
  RrepPacket forged;
  forged.src = rreq.src;
  forged.dest = rreq.dest;
  forged.destSeq = rreq.destSeq + m_inflation;
  forged.hopCount = 1;
  forged.originator = self.Id ();
  forged.lifetimeMs = static_cast<uint32_t> (self.Config ().routeLifetime.GetMicros () / 1000);
  forged.claimedNextHop = kFabricatedIdBase | self.Id ();
  self.Unicast (prevHop, forged);
  return RreqAction::Reply;
}

std::optional<DataAction>
BlackholeBehavior::OnData (AodvAgent &self, DataPacket &data, NodeId prevHop)
{
  if (data.dest == self.Id ())
    {
      return std::nullopt;
    }
  self.Env ().DataDropped (self.Id (), data, DropReason::Blackhole);
  if (m_sendRerr)
    {
      self.ReportUnreachable (data.dest, prevHop);
    }
  return DataAction::Dropped;
}

} // namespace manet
