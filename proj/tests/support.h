// Shared fixtures: a recording NodeEnv for driving one agent by hand, and
// scenario builders for scripted topologies.
#ifndef MANET_TESTS_SUPPORT_H
#define MANET_TESTS_SUPPORT_H

#include "manet/aodv.h"
#include "manet/scenario.h"

#include <vector>

namespace manet::test {

struct SentFrame
{
  NodeId from;
  NodeId linkDst;
  Packet packet;
};

class RecordingEnv : public NodeEnv
{
public:
  Simulator &Sim () override { return sim; }
  void Send (NodeId from, NodeId linkDst, Packet p) override { sent.push_back ({from, linkDst, std::move (p)}); }
  void DataDelivered (NodeId at, const DataPacket &p) override { delivered.push_back (p); }
  void DataDropped (NodeId at, const DataPacket &p, DropReason why) override { dropped.push_back (why); }
  void RouteError (NodeId at) override { ++routeErrors; }
  void SuspectFlagged (NodeId at, NodeId suspect, AttackKind kind) override { flagged.push_back (suspect); }

  template <typename T>
  size_t Count () const
  {
    size_t n = 0;
    for (const auto &f : sent)
      {
        n += std::holds_alternative<T> (f.packet) ? 1 : 0;
      }
    return n;
  }

  Simulator sim;
  std::vector<SentFrame> sent;
  std::vector<DataPacket> delivered;
  std::vector<DropReason> dropped;
  std::vector<NodeId> flagged;
  int routeErrors = 0;
};

/// Static explicit layout with one flow and no jitter-free shortcuts.
inline ScenarioConfig
StaticScenario (std::vector<Vec2> positions, NodeId src, NodeId dest, double duration)
{
  ScenarioConfig c;
  c.nodeCount = static_cast<uint32_t> (positions.size ());
  c.placement = PlacementKind::Explicit;
  c.positions = std::move (positions);
  c.mobility.model = MobilityModel::Static;
  c.simDuration = duration;
  c.traffic.explicitFlows = {{src, dest}};
  c.traffic.start = 1.0;
  c.traffic.stop = duration - 1.0;
  return c;
}

} // namespace manet::test

#endif
