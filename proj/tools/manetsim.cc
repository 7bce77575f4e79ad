// Command-line front end: single runs and parameter sweeps.
#include "manet/harness.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

using namespace manet;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

/// The environment may redirect output, e.g. for batch jobs.
std::string
OutputDir (const std::string &flag)
{
  if (const char *env = std::getenv ("MANETSIM_OUT_DIR"); env != nullptr && *env != '\0')
    {
      return env;
    }
  return flag;
}

std::vector<std::string>
SplitList (const std::string &s)
{
  std::vector<std::string> out;
  std::stringstream in (s);
  std::string item;
  while (std::getline (in, item, ','))
    {
      if (!item.empty ())
        {
          out.push_back (item);
        }
    }
  return out;
}

SweepSpec
BuildSpec (const std::string &fractions, uint32_t seeds, uint64_t firstSeed, const std::string &protocols,
           const std::string &attacks)
{
  SweepSpec spec;
  if (!fractions.empty ())
    {
      spec.fractions.clear ();
      for (const auto &f : SplitList (fractions))
        {
          double v = 0.0;
          try
            {
              v = std::stod (f);
            }
          catch (const std::exception &)
            {
              throw ConfigError ("--fractions", "not a number: " + f);
            }
          if (!(v > 0.0 && v < 100.0))
            {
              throw ConfigError ("--fractions", "each fraction must be in (0, 100)");
            }
          spec.fractions.push_back (v);
        }
    }
  if (seeds == 0)
    {
      throw ConfigError ("--seeds", "must be >= 1");
    }
  spec.seeds.clear ();
  for (uint32_t i = 0; i < seeds; ++i)
    {
      spec.seeds.push_back (firstSeed + i);
    }
  if (!protocols.empty ())
    {
      spec.protocols.clear ();
      for (const auto &p : SplitList (protocols))
        {
          auto k = ParseProtocol (p);
          if (!k)
            {
              throw ConfigError ("--protocols", "unknown protocol " + p);
            }
          spec.protocols.push_back (*k);
        }
    }
  if (!attacks.empty ())
    {
      spec.attacks.clear ();
      for (const auto &a : SplitList (attacks))
        {
          auto k = ParseAttack (a);
          if (!k || *k == AttackKind::None)
            {
              throw ConfigError ("--attacks", "unknown attack " + a);
            }
          spec.attacks.push_back (*k);
        }
    }
  if (spec.fractions.empty () || spec.protocols.empty () || spec.attacks.empty ())
    {
      throw ConfigError ("", "sweep lists must not be empty");
    }
  return spec;
}

} // namespace

int
main (int argc, char **argv)
{
  CLI::App app{"Deterministic MANET routing simulator (AODV / SD-AODV under attack)"};
  app.require_subcommand (1);

  std::string runConfig, runOut = ".";
  bool runTrace = false;
  auto *run = app.add_subcommand ("run", "Run one scenario and write its STAT file");
  run->add_option ("config", runConfig, "Scenario JSON file")->required ();
  run->add_option ("--out", runOut, "Output directory");
  run->add_flag ("--mobility-trace", runTrace, "Also write node positions per mobility tick");

  std::string sweepConfig, sweepOut = "sweep-out", fractions, protocols, attacks;
  uint32_t seeds = 5;
  bool separate = false, sweepTrace = false, quiet = false;
  auto *sweep = app.add_subcommand ("sweep", "Run protocol x attack x fraction x seed and write figure CSVs");
  sweep->add_option ("config", sweepConfig, "Base scenario JSON file")->required ();
  sweep->add_option ("--out", sweepOut, "Output directory");
  sweep->add_option ("--fractions", fractions, "Comma-separated malicious percentages (default 5,10,...,30)");
  sweep->add_option ("--seeds", seeds, "Number of seeds per point, starting at the config seed");
  sweep->add_option ("--protocols", protocols, "Comma-separated: aodv,sdaodv");
  sweep->add_option ("--attacks", attacks, "Comma-separated: wormhole,byzantine,blackhole");
  sweep->add_flag ("--separate-sdaodv-curves", separate, "One SD-AODV column per attack kind");
  sweep->add_flag ("--mobility-trace", sweepTrace, "Write node positions per run");
  sweep->add_flag ("--quiet", quiet, "No progress output");

  try
    {
      app.parse (argc, argv);
    }
  catch (const CLI::ParseError &e)
    {
      int code = app.exit (e);
      return code == 0 ? kOk : kConfigError;
    }

  try
    {
      if (*run)
        {
          ScenarioConfig cfg = LoadScenario (runConfig);
          std::string out = OutputDir (runOut);
          std::filesystem::create_directories (out);
          std::string stat = (std::filesystem::path (out) / StatFileName (cfg)).string ();
          std::string trace;
          if (runTrace)
            {
              trace = stat.substr (0, stat.size () - 5) + ".mobility.csv";
            }
          RunResult r = RunOne (cfg, stat, trace);
          std::cout << CsvHeader () << '\n' << CsvRow (r) << '\n';
          std::cerr << "wrote " << stat << '\n';
          return kOk;
        }
      ScenarioConfig base = LoadScenario (sweepConfig);
      SweepSpec spec = BuildSpec (fractions, seeds, base.seed, protocols, attacks);
      spec.mobilityTrace = sweepTrace;
      std::string out = OutputDir (sweepOut);
      RunSweep (base, spec, out, separate, [quiet] (size_t done, size_t total, const RunResult &r) {
        if (!quiet)
          {
            std::cerr << '[' << done << '/' << total << "] " << CsvRow (r) << '\n';
          }
      });
      std::cerr << "wrote " << out << '\n';
      return kOk;
    }
  catch (const ConfigError &e)
    {
      std::cerr << "config error: " << e.what () << '\n';
      return kConfigError;
    }
  catch (const SweepError &e)
    {
      std::cerr << "error: " << e.what () << "\nfailing config:\n" << e.Config () << '\n';
      return kRuntimeError;
    }
  catch (const std::exception &e)
    {
      std::cerr << "error: " << e.what () << '\n';
      return kRuntimeError;
    }
}
