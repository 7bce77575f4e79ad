// Scenario configuration: defaults, JSON loading with field-path
// diagnostics, and the flat key/value echo written into STAT files.
#ifndef MANET_SCENARIO_H
#define MANET_SCENARIO_H

#include "manet/adversary.h"
#include "manet/aodv.h"
#include "manet/field.h"
#include "manet/medium.h"
#include "manet/sdaodv.h"
#include "manet/telemetry.h"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace manet {

enum class PlacementKind
{
  Uniform,
  Explicit,
};

enum class MobilityModel
{
  Waypoint,
  Static,
};

struct MobilityConfig
{
  MobilityModel model = MobilityModel::Waypoint;
  SpeedRange speeds;
  /// Seconds between position updates.
  double tick = 0.1;
};

struct TrafficConfig
{
  uint32_t flows = 10;
  uint16_t packetSize = 512;
  /// Packets per second per flow.
  double rate = 4.0;
  double start = 1.0;
  double stop = 99.0;
  /// (src, dest) pairs; when non-empty they replace the random flows.
  std::vector<std::pair<NodeId, NodeId>> explicitFlows;
};

struct ScenarioConfig
{
  Terrain terrain;
  uint32_t nodeCount = 50;
  double simDuration = 100.0;
  PlacementKind placement = PlacementKind::Uniform;
  std::vector<Vec2> positions;
  uint64_t seed = 1;
  MobilityConfig mobility;
  TrafficConfig traffic;
  MediumConfig medium;
  ProtocolKind protocol = ProtocolKind::Aodv;
  AttackProfile attack;
  AodvConfig aodv;
  SdAodvConfig sdaodv;
};

/// Invalid configuration. `Path()` names the offending field, e.g. "medium.bandwidth".
class ConfigError : public std::runtime_error
{
public:
  ConfigError (std::string path, const std::string &message)
    : std::runtime_error (path.empty () ? message : path + ": " + message), m_path (std::move (path))
  {
  }
  const std::string &Path () const { return m_path; }

private:
  std::string m_path;
};

/// Parse JSON text; missing keys keep their defaults, unknown keys are rejected.
ScenarioConfig ParseScenario (const std::string &jsonText);
/// ParseScenario on the contents of `path`.
ScenarioConfig LoadScenario (const std::string &path);
/// Cross-field checks; ParseScenario runs these too.
void ValidateScenario (const ScenarioConfig &cfg);
/// Every setting that affects the event trace, as ordered key/value pairs.
ConfigEcho EchoConfig (const ScenarioConfig &cfg);
/// The configuration as JSON that ParseScenario accepts.
std::string DumpScenario (const ScenarioConfig &cfg);

/// Edit distance, used for "did you mean" hints.
size_t Levenshtein (std::string_view a, std::string_view b);

} // namespace manet

#endif
