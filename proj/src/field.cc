#include "manet/field.h"

#include <cmath>
#include <stdexcept>

namespace manet {

double
Distance (Vec2 a, Vec2 b)
{
  return std::hypot (a.x - b.x, a.y - b.y);
}

bool
InRange (Vec2 a, Vec2 b, double range)
{
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return dx * dx + dy * dy <= range * range;
}

std::vector<NodePosition>
PlaceUniform (uint32_t n, const Terrain &terrain, RngStream &rng)
{
  if (n == 0)
    {
      throw std::invalid_argument ("PlaceUniform: node count must be >= 1");
    }
  std::vector<NodePosition> out;
  out.reserve (n);
  for (uint32_t i = 0; i < n; ++i)
    {
      NodePosition p;
      p.id = i;
      p.pos.x = rng.Uniform (0.0, terrain.width);
      p.pos.y = rng.Uniform (0.0, terrain.height);
      p.waypoint = p.pos;
      out.push_back (p);
    }
  return out;
}

NodePosition
AdvanceMobility (NodePosition node, double dt, const Terrain &terrain, SpeedRange speeds, RngStream &rng)
{
  if (node.pos == node.waypoint)
    {
      node.waypoint.x = rng.Uniform (0.0, terrain.width);
      node.waypoint.y = rng.Uniform (0.0, terrain.height);
      node.speed = rng.Uniform (speeds.min, speeds.max);
      return node;
    }
  double remaining = Distance (node.pos, node.waypoint);
  double step = node.speed * dt;
  if (step >= remaining)
    {
      node.pos = node.waypoint;
    }
  else
    {
      double f = step / remaining;
      node.pos.x += (node.waypoint.x - node.pos.x) * f;
      node.pos.y += (node.waypoint.y - node.pos.y) * f;
    }
  return node;
}

std::vector<NodeId>
Neighbors (NodeId self, std::span<const NodePosition> all, double range)
{
  std::vector<NodeId> out;
  const NodePosition *me = nullptr;
  for (const auto &p : all)
    {
      if (p.id == self)
        {
          me = &p;
          break;
        }
    }
  if (me == nullptr)
    {
      return out;
    }
  for (const auto &p : all)
    {
      if (p.id != self && InRange (me->pos, p.pos, range))
        {
          out.push_back (p.id);
        }
    }
  return out;
}

} // namespace manet
