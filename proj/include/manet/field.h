// Node placement, random-waypoint mobility and unit-disk neighbourhoods.
#ifndef MANET_FIELD_H
#define MANET_FIELD_H

#include "manet/sim_core.h"
#include "manet/types.h"

#include <cstdint>
#include <span>
#include <vector>

namespace manet {

struct Terrain
{
  double width = 1000.0;
  double height = 1000.0;

  bool Contains (double x, double y) const { return x >= 0.0 && y >= 0.0 && x <= width && y <= height; }
};

struct Vec2
{
  double x = 0.0;
  double y = 0.0;
  auto operator<=> (const Vec2 &) const = default;
};

double Distance (Vec2 a, Vec2 b);

struct SpeedRange
{
  double min = 5.0;
  double max = 20.0;
};

/// Position plus random-waypoint state. A freshly placed node has its
/// waypoint equal to its position, so its first mobility step draws a leg.
struct NodePosition
{
  NodeId id = 0;
  Vec2 pos;
  Vec2 waypoint;
  double speed = 0.0;
};

/// n positions drawn uniformly over the terrain, x then y per node in id order.
/// Throws std::invalid_argument for n == 0.
std::vector<NodePosition> PlaceUniform (uint32_t n, const Terrain &terrain, RngStream &rng);

/// One random-waypoint step with zero pause time. A node sitting on its
/// waypoint draws a new waypoint and speed and does not move this step; a
/// node that would overshoot stops exactly on the waypoint.
NodePosition AdvanceMobility (NodePosition node, double dt, const Terrain &terrain, SpeedRange speeds,
                              RngStream &rng);

/// Ids j != self with distance <= range (inclusive boundary), ascending.
std::vector<NodeId> Neighbors (NodeId self, std::span<const NodePosition> all, double range);

bool InRange (Vec2 a, Vec2 b, double range);

} // namespace manet

#endif
