// One simulation run: nodes, medium, agents, traffic, mobility and the
// accounting that turns the event trace into a MetricsReport.
#ifndef MANET_WORLD_H
#define MANET_WORLD_H

#include "manet/aodv.h"
#include "manet/medium.h"
#include "manet/scenario.h"
#include "manet/telemetry.h"

#include <map>
#include <memory>
#include <tuple>
#include <vector>

namespace manet {

struct SuspectEvent
{
  SimTime at;
  NodeId detector = 0;
  NodeId suspect = 0;
  AttackKind kind = AttackKind::None;
};

struct MobilitySample
{
  SimTime at;
  NodeId id = 0;
  Vec2 pos;
};

struct WorldOptions
{
  /// Count non-discard RREQ handlings per (node, src, bcast_id).
  bool trackRreq = false;
  /// Keep every node position at every mobility tick.
  bool recordMobility = false;
  /// Watch every route install for a destination sequence number going backwards.
  bool trackRoutes = false;
};

class World : public NodeEnv
{
public:
  /// Throws ConfigError when the attack or traffic settings cannot be realised.
  explicit World (const ScenarioConfig &cfg, WorldOptions opts = {});
  ~World () override;
  World (const World &) = delete;
  World &operator= (const World &) = delete;

  /// Run to sim_duration. May be called once.
  void Run ();
  MetricsReport Report () const;
  /// Teleport a node, for scripted topology changes.
  void MoveNode (NodeId id, Vec2 to);

  const ScenarioConfig &Config () const { return m_cfg; }
  Simulator &Sim () override { return m_sim; }
  AodvAgent &Agent (NodeId id) { return *m_agents.at (id); }
  const AodvAgent &Agent (NodeId id) const { return *m_agents.at (id); }
  const std::vector<NodePosition> &Positions () const { return m_positions; }
  const std::vector<CbrFlow> &Flows () const { return m_flows; }
  /// In assignment order.
  const std::vector<NodeId> &Malicious () const { return m_malicious; }
  const std::map<NodeId, NodeId> &TunnelPartners () const { return m_partners; }
  const PacketLedger &Ledger () const { return m_ledger; }
  const std::vector<NodeCounters> &Counters () const { return m_counters; }
  const Medium &GetMedium () const { return *m_medium; }
  const std::vector<SuspectEvent> &SuspectEvents () const { return m_suspectEvents; }
  const std::vector<MobilitySample> &MobilityTrace () const { return m_mobilityTrace; }
  /// Only filled when WorldOptions::trackRreq is set.
  const std::map<std::tuple<NodeId, NodeId, uint32_t>, uint32_t> &RreqAcceptances () const { return m_rreqAccepted; }
  uint64_t RouteErrorEvents () const { return m_routeErrors; }
  /// Installs that lowered a stored destination sequence number (trackRoutes only).
  uint64_t SeqRegressions () const { return m_seqRegressions; }
  uint64_t RouteInstalls () const { return m_routeInstalls; }
  uint64_t TraceHash () const { return m_hash; }

  // NodeEnv
  void Send (NodeId from, NodeId linkDst, Packet p) override;
  void DataDelivered (NodeId at, const DataPacket &p) override;
  void DataDropped (NodeId at, const DataPacket &p, DropReason why) override;
  void RouteError (NodeId at) override;
  void SuspectFlagged (NodeId at, NodeId suspect, AttackKind kind) override;
  void RreqHandled (NodeId at, const RreqPacket &p, NodeId prevHop, RreqAction a) override;
  void Tunnel (NodeId from, NodeId to, const RreqPacket &p) override;
  void RouteInstalled (NodeId at, const RouteEntry &e) override;

private:
  void BuildFlows ();
  void AssignAdversaries ();
  void ScheduleTraffic ();
  void MobilityTick ();
  void Mix (uint64_t v);

  ScenarioConfig m_cfg;
  WorldOptions m_opts;
  Simulator m_sim;
  RngStream m_mobilityRng;
  std::vector<NodePosition> m_positions;
  std::unique_ptr<Medium> m_medium;
  std::vector<std::unique_ptr<AodvAgent>> m_agents;
  std::vector<CbrFlow> m_flows;
  std::vector<NodeId> m_malicious;
  std::map<NodeId, NodeId> m_partners;

  PacketLedger m_ledger;
  std::vector<NodeCounters> m_counters;
  std::vector<SuspectEvent> m_suspectEvents;
  std::vector<MobilitySample> m_mobilityTrace;
  std::map<std::tuple<NodeId, NodeId, uint32_t>, uint32_t> m_rreqAccepted;
  uint64_t m_routeErrors = 0;
  std::map<std::pair<NodeId, NodeId>, uint32_t> m_lastSeq;
  uint64_t m_seqRegressions = 0;
  uint64_t m_routeInstalls = 0;
  uint64_t m_hash = 0xcbf29ce484222325ull;
  bool m_ran = false;
};

} // namespace manet

#endif
