// Single runs, parameter sweeps and the figure CSVs built from them.
#ifndef MANET_HARNESS_H
#define MANET_HARNESS_H

#include "manet/scenario.h"
#include "manet/telemetry.h"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace manet {

struct RunResult
{
  ProtocolKind protocol = ProtocolKind::Aodv;
  AttackKind attack = AttackKind::None;
  double fraction = 0.0;
  uint64_t seed = 0;
  MetricsReport report;
};

/// `protocol_attack_fraction_seed.stat`.
std::string StatFileName (const ScenarioConfig &cfg);

/// Run `cfg` to completion. With a non-empty `statPath` the STAT file is
/// written there; with a non-empty `mobilityTracePath` the node positions at
/// every mobility tick are written as CSV.
RunResult RunOne (const ScenarioConfig &cfg, const std::string &statPath = {},
                  const std::string &mobilityTracePath = {});

std::string CsvHeader ();
/// protocol,attack,fraction,seed,pdf,avg_delay,throughput,route_errors
std::string CsvRow (const RunResult &r);

struct SweepSpec
{
  std::vector<double> fractions = {5, 10, 15, 20, 25, 30};
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  std::vector<ProtocolKind> protocols = {ProtocolKind::Aodv, ProtocolKind::SdAodv};
  std::vector<AttackKind> attacks = {AttackKind::Wormhole, AttackKind::Byzantine, AttackKind::Blackhole};
  /// Also run every protocol with no attack (fraction 0) for each seed.
  bool baselines = true;
  bool mobilityTrace = false;
};

/// Mean and standard error over the seeds of one (protocol, attack, fraction).
struct MeanRow
{
  ProtocolKind protocol = ProtocolKind::Aodv;
  AttackKind attack = AttackKind::None;
  double fraction = 0.0;
  size_t runs = 0;
  /// Means over the runs where the metric is defined.
  std::optional<double> pdf;
  std::optional<double> avgDelay;
  double throughput = 0.0;
  double routeErrors = 0.0;
  std::optional<double> pdfSe;
  std::optional<double> avgDelaySe;
  double throughputSe = 0.0;
  double routeErrorsSe = 0.0;
};

struct SweepResult
{
  /// Sorted by (protocol, attack, fraction, seed).
  std::vector<RunResult> runs;
  std::vector<MeanRow> means;

  const MeanRow *Mean (ProtocolKind p, AttackKind a, double fraction) const;
};

/// Thrown when one run of a sweep fails; carries the failing configuration.
class SweepError : public std::runtime_error
{
public:
  SweepError (const std::string &what, std::string config)
    : std::runtime_error (what), m_config (std::move (config))
  {
  }
  const std::string &Config () const { return m_config; }

private:
  std::string m_config;
};

/// The list of configurations a sweep runs, in run order.
std::vector<ScenarioConfig> ExpandSweep (const ScenarioConfig &base, const SweepSpec &spec);

/// Runs every configuration. With a non-empty `outDir`, writes runs.csv,
/// stat/<name>.stat per run and the four figure CSVs.
SweepResult RunSweep (const ScenarioConfig &base, const SweepSpec &spec, const std::string &outDir = {},
                      bool separateSdAodv = false,
                      const std::function<void (size_t, size_t, const RunResult &)> &progress = {});

std::vector<MeanRow> Aggregate (const std::vector<RunResult> &runs);

enum class Figure
{
  Pdf,
  Delay,
  Throughput,
  RouteErrors,
};

std::string_view FigureName (Figure f);

/// Figure-ready table: one row per swept fraction, one column per curve.
std::string RenderFigureCsv (const SweepResult &result, Figure figure, bool separateSdAodv);
void EmitFigureCsv (const SweepResult &result, Figure figure, bool separateSdAodv, const std::string &path);

} // namespace manet

#endif
