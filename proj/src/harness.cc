#include "manet/harness.h"

#include "manet/world.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace manet {

namespace fs = std::filesystem;

namespace {

std::string
FractionLabel (double f)
{
  std::string s = FormatFixed9 (f);
  s.erase (s.find_last_not_of ('0') + 1);
  if (!s.empty () && s.back () == '.')
    {
      s.pop_back ();
    }
  return s;
}

std::string
Opt (const std::optional<double> &v)
{
  return v ? FormatFixed9 (*v) : std::string ("NA");
}

void
WriteFile (const std::string &path, const std::string &text)
{
  std::ofstream f (path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text) || !f.flush ())
    {
      throw std::runtime_error ("cannot write " + path);
    }
}

auto
SortKey (const RunResult &r)
{
  return std::make_tuple (static_cast<int> (r.protocol), static_cast<int> (r.attack), r.fraction, r.seed);
}

struct Stats
{
  std::optional<double> mean;
  std::optional<double> se;
};

Stats
MeanSe (const std::vector<double> &xs)
{
  Stats s;
  if (xs.empty ())
    {
      return s;
    }
  double sum = 0.0;
  for (double x : xs)
    {
      sum += x;
    }
  double mean = sum / static_cast<double> (xs.size ());
  double var = 0.0;
  for (double x : xs)
    {
      var += (x - mean) * (x - mean);
    }
  double se = xs.size () > 1 ? std::sqrt (var / static_cast<double> (xs.size () - 1)) /
                                   std::sqrt (static_cast<double> (xs.size ()))
                             : 0.0;
  s.mean = Canonical (mean);
  s.se = Canonical (se);
  return s;
}

} // namespace

std::string
StatFileName (const ScenarioConfig &cfg)
{
  return std::string (ToString (cfg.protocol)) + "_" + std::string (ToString (cfg.attack.kind)) + "_" +
         FractionLabel (cfg.attack.kind == AttackKind::None ? 0.0 : cfg.attack.maliciousFraction) + "_" +
         std::to_string (cfg.seed) + ".stat";
}

RunResult
RunOne (const ScenarioConfig &cfg, const std::string &statPath, const std::string &mobilityTracePath)
{
  WorldOptions opts;
  opts.recordMobility = !mobilityTracePath.empty ();
  World world (cfg, opts);
  world.Run ();
  RunResult r;
  r.protocol = cfg.protocol;
  r.attack = cfg.attack.kind;
  r.fraction = cfg.attack.kind == AttackKind::None ? 0.0 : cfg.attack.maliciousFraction;
  r.seed = cfg.seed;
  r.report = world.Report ();
  if (!statPath.empty ())
    {
      WriteStat (r.report, EchoConfig (cfg), statPath);
    }
  if (!mobilityTracePath.empty ())
    {
      std::ostringstream out;
      out << "time,node,x,y\n";
      for (const auto &s : world.MobilityTrace ())
        {
          out << FormatFixed9 (s.at.GetSeconds ()) << ',' << s.id << ',' << FormatFixed9 (s.pos.x) << ','
              << FormatFixed9 (s.pos.y) << '\n';
        }
      WriteFile (mobilityTracePath, out.str ());
    }
  return r;
}

std::string
CsvHeader ()
{
  return "protocol,attack,fraction,seed,pdf,avg_delay,throughput,route_errors";
}

std::string
CsvRow (const RunResult &r)
{
  std::ostringstream out;
  out << ToString (r.protocol) << ',' << ToString (r.attack) << ',' << FractionLabel (r.fraction) << ',' << r.seed
      << ',' << Opt (r.report.pdf) << ',' << Opt (r.report.avgDelay) << ',' << FormatFixed9 (r.report.throughput)
      << ',' << r.report.routeErrors;
  return out.str ();
}

const MeanRow *
SweepResult::Mean (ProtocolKind p, AttackKind a, double fraction) const
{
  for (const auto &m : means)
    {
      if (m.protocol == p && m.attack == a && m.fraction == fraction)
        {
          return &m;
        }
    }
  return nullptr;
}

std::vector<ScenarioConfig>
ExpandSweep (const ScenarioConfig &base, const SweepSpec &spec)
{
  std::vector<ScenarioConfig> out;
  for (ProtocolKind p : spec.protocols)
    {
      if (spec.baselines)
        {
          for (uint64_t seed : spec.seeds)
            {
              ScenarioConfig c = base;
              c.protocol = p;
              c.attack.kind = AttackKind::None;
              c.attack.maliciousFraction = 0.0;
              c.seed = seed;
              out.push_back (c);
            }
        }
      for (AttackKind a : spec.attacks)
        {
          for (double f : spec.fractions)
            {
              for (uint64_t seed : spec.seeds)
                {
                  ScenarioConfig c = base;
                  c.protocol = p;
                  c.attack.kind = a;
                  c.attack.maliciousFraction = f;
                  c.seed = seed;
                  out.push_back (c);
                }
            }
        }
    }
  return out;
}

std::vector<MeanRow>
Aggregate (const std::vector<RunResult> &runs)
{
  std::map<std::tuple<int, int, double>, std::vector<const RunResult *>> groups;
  for (const auto &r : runs)
    {
      groups[{static_cast<int> (r.protocol), static_cast<int> (r.attack), r.fraction}].push_back (&r);
    }
  std::vector<MeanRow> out;
  for (const auto &[key, members] : groups)
    {
      MeanRow m;
      m.protocol = static_cast<ProtocolKind> (std::get<0> (key));
      m.attack = static_cast<AttackKind> (std::get<1> (key));
      m.fraction = std::get<2> (key);
      m.runs = members.size ();
      std::vector<double> pdf, delay, thr, rerr;
      for (const RunResult *r : members)
        {
          if (r->report.pdf)
            pdf.push_back (*r->report.pdf);
          if (r->report.avgDelay)
            delay.push_back (*r->report.avgDelay);
          thr.push_back (r->report.throughput);
          rerr.push_back (static_cast<double> (r->report.routeErrors));
        }
      Stats s = MeanSe (pdf);
      m.pdf = s.mean;
      m.pdfSe = s.se;
      s = MeanSe (delay);
      m.avgDelay = s.mean;
      m.avgDelaySe = s.se;
      s = MeanSe (thr);
      m.throughput = s.mean.value_or (0.0);
      m.throughputSe = s.se.value_or (0.0);
      s = MeanSe (rerr);
      m.routeErrors = s.mean.value_or (0.0);
      m.routeErrorsSe = s.se.value_or (0.0);
      out.push_back (m);
    }
  return out;
}

SweepResult
RunSweep (const ScenarioConfig &base, const SweepSpec &spec, const std::string &outDir, bool separateSdAodv,
          const std::function<void (size_t, size_t, const RunResult &)> &progress)
{
  std::vector<ScenarioConfig> configs = ExpandSweep (base, spec);
  if (!outDir.empty ())
    {
      fs::create_directories (fs::path (outDir) / "stat");
      if (spec.mobilityTrace)
        {
          fs::create_directories (fs::path (outDir) / "mobility");
        }
    }
  SweepResult result;
  for (size_t i = 0; i < configs.size (); ++i)
    {
      const ScenarioConfig &c = configs[i];
      std::string statPath, tracePath;
      if (!outDir.empty ())
        {
          statPath = (fs::path (outDir) / "stat" / StatFileName (c)).string ();
          if (spec.mobilityTrace)
            {
              std::string name = StatFileName (c);
              tracePath = (fs::path (outDir) / "mobility" / (name.substr (0, name.size () - 5) + ".csv")).string ();
            }
        }
      try
        {
          result.runs.push_back (RunOne (c, statPath, tracePath));
        }
      catch (const std::exception &e)
        {
          throw SweepError (std::string ("run ") + StatFileName (c) + " failed: " + e.what (), DumpScenario (c));
        }
      if (progress)
        {
          progress (i + 1, configs.size (), result.runs.back ());
        }
    }
  std::stable_sort (result.runs.begin (), result.runs.end (),
                    [] (const RunResult &a, const RunResult &b) { return SortKey (a) < SortKey (b); });
  result.means = Aggregate (result.runs);

  if (!outDir.empty ())
    {
      std::ostringstream csv;
      csv << CsvHeader () << '\n';
      for (const auto &r : result.runs)
        {
          csv << CsvRow (r) << '\n';
        }
      for (const auto &m : result.means)
        {
          csv << ToString (m.protocol) << ',' << ToString (m.attack) << ',' << FractionLabel (m.fraction) << ",mean,"
              << Opt (m.pdf) << ',' << Opt (m.avgDelay) << ',' << FormatFixed9 (m.throughput) << ','
              << FormatFixed9 (m.routeErrors) << '\n';
        }
      WriteFile ((fs::path (outDir) / "runs.csv").string (), csv.str ());
      for (Figure f : {Figure::Pdf, Figure::Delay, Figure::Throughput, Figure::RouteErrors})
        {
          EmitFigureCsv (result, f, separateSdAodv,
                         (fs::path (outDir) / ("fig_" + std::string (FigureName (f)) + ".csv")).string ());
        }
    }
  return result;
}

std::string_view
FigureName (Figure f)
{
  switch (f)
    {
    case Figure::Pdf:
      return "pdf";
    case Figure::Delay:
      return "delay";
    case Figure::Throughput:
      return "throughput";
    case Figure::RouteErrors:
      return "rerr";
    }
  return "?";
}

std::string
RenderFigureCsv (const SweepResult &result, Figure figure, bool separateSdAodv)
{
  auto value = [figure] (const MeanRow *m) -> std::optional<double> {
    if (m == nullptr)
      {
        return std::nullopt;
      }
    switch (figure)
      {
      case Figure::Pdf:
        return m->pdf;
      case Figure::Delay:
        return m->avgDelay;
      case Figure::Throughput:
        return m->throughput;
      case Figure::RouteErrors:
        return m->routeErrors;
      }
    return std::nullopt;
  };
  const std::array<AttackKind, 3> kinds = {AttackKind::Wormhole, AttackKind::Byzantine, AttackKind::Blackhole};

  std::vector<double> fractions;
  for (const auto &m : result.means)
    {
      if (m.attack != AttackKind::None)
        {
          fractions.push_back (m.fraction);
        }
    }
  std::sort (fractions.begin (), fractions.end ());
  fractions.erase (std::unique (fractions.begin (), fractions.end ()), fractions.end ());

  std::ostringstream out;
  out << "fraction,wormhole_aodv,byzantine_aodv,blackhole_aodv";
  if (separateSdAodv)
    {
      out << ",wormhole_sdaodv,byzantine_sdaodv,blackhole_sdaodv";
    }
  else
    {
      out << ",sdaodv";
    }
  out << ",aodv_no_attack,sdaodv_no_attack\n";

  auto aodvBase = value (result.Mean (ProtocolKind::Aodv, AttackKind::None, 0.0));
  auto sdBase = value (result.Mean (ProtocolKind::SdAodv, AttackKind::None, 0.0));
  for (double f : fractions)
    {
      out << FractionLabel (f);
      for (AttackKind a : kinds)
        {
          out << ',' << Opt (value (result.Mean (ProtocolKind::Aodv, a, f)));
        }
      if (separateSdAodv)
        {
          for (AttackKind a : kinds)
            {
              out << ',' << Opt (value (result.Mean (ProtocolKind::SdAodv, a, f)));
            }
        }
      else
        {
          double sum = 0.0;
          int n = 0;
          for (AttackKind a : kinds)
            {
              if (auto v = value (result.Mean (ProtocolKind::SdAodv, a, f)))
                {
                  sum += *v;
                  ++n;
                }
            }
          out << ',' << (n ? FormatFixed9 (sum / n) : std::string ("NA"));
        }
      out << ',' << Opt (aodvBase) << ',' << Opt (sdBase) << '\n';
    }
  return out.str ();
}

void
EmitFigureCsv (const SweepResult &result, Figure figure, bool separateSdAodv, const std::string &path)
{
  WriteFile (path, RenderFigureCsv (result, figure, separateSdAodv));
}

} // namespace manet
