// Malicious node behaviours and the choice of which nodes misbehave.
#ifndef MANET_ADVERSARY_H
#define MANET_ADVERSARY_H

#include "manet/aodv.h"
#include "manet/sim_core.h"
#include "manet/types.h"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace manet {

enum class DecoyMode
{
  Partner,      // rewrite to the tunnel partner's id
  RandomHonest, // rewrite to a random honest id, drawn per packet
};

struct AttackProfile
{
  AttackKind kind = AttackKind::None;
  /// Percentage of the k nodes, in [0, 100).
  double maliciousFraction = 0.0;
  uint32_t seqInflation = 100;
  bool tunnelEnabled = true;
  /// Blackhole answers swallowed DATA with a route error, like a node with no route.
  bool blackholeRerr = true;
  DecoyMode decoy = DecoyMode::Partner;
  /// When non-empty, used instead of random assignment.
  std::vector<NodeId> explicitNodes;
  /// When non-empty, used instead of sequential pairing.
  std::vector<std::pair<NodeId, NodeId>> tunnelPairs;
};

/// round-half-up(fraction * k / 100), at least 1 when fraction > 0.
uint32_t MaliciousCount (uint32_t k, double fractionPercent);

/// Uniform sample without replacement from the ids not in `endpoints`, in
/// draw order. Throws std::invalid_argument if the count leaves fewer than two
/// honest nodes or exceeds the eligible candidates.
std::vector<NodeId> AssignMalicious (uint32_t k, const AttackProfile &profile, RngStream &rng,
                                     const std::set<NodeId> &endpoints);

/// Partner of each member: consecutive members pair up, an odd one out pairs
/// with the first member, a lone member pairs with itself.
std::map<NodeId, NodeId> PairTunnels (const std::vector<NodeId> &members);

/// Ids >= this are never assigned to real nodes.
constexpr NodeId kFabricatedIdBase = 0xF0000000u;

class WormholeBehavior : public Behavior
{
public:
  WormholeBehavior (NodeId partner, bool tunnel, DecoyMode decoy, std::vector<NodeId> honest, RngStream rng);

  AttackKind Kind () const override { return AttackKind::Wormhole; }
  std::optional<RreqAction> OnRreq (AodvAgent &self, RreqPacket &rreq, NodeId prevHop) override;
  bool OnTunneledRreq (AodvAgent &self, const RreqPacket &rreq) override;
  NodeId Partner () const { return m_partner; }

private:
  NodeId PickDecoy (NodeId realDest);

  NodeId m_partner;
  bool m_tunnel;
  DecoyMode m_decoy;
  std::vector<NodeId> m_honest;
  RngStream m_rng;
};

class ByzantineBehavior : public Behavior
{
public:
  AttackKind Kind () const override { return AttackKind::Byzantine; }
  std::optional<DataAction> OnData (AodvAgent &self, DataPacket &data, NodeId prevHop) override;
};

class BlackholeBehavior : public Behavior
{
public:
  BlackholeBehavior (uint32_t seqInflation, bool sendRerr) : m_inflation (seqInflation), m_sendRerr (sendRerr) {}

  AttackKind Kind () const override { return AttackKind::Blackhole; }
  std::optional<RreqAction> OnRreq (AodvAgent &self, RreqPacket &rreq, NodeId prevHop) override;
  bool OnRrep (AodvAgent &self, RrepPacket &rrep, NodeId prevHop) override { return true; }
  std::optional<DataAction> OnData (AodvAgent &self, DataPacket &data, NodeId prevHop) override;
  bool OnProbe (AodvAgent &self, const ProbePacket &probe, NodeId prevHop) override { return true; }

private:
  uint32_t m_inflation;
  bool m_sendRerr;
};

} // namespace manet

#endif
