// Acceptance run: one PASS/FAIL line per criterion. Exit status is non-zero
// if any criterion fails.
#include "manet/harness.h"
#include "manet/world.h"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace manet;
namespace fs = std::filesystem;

namespace {

// Tolerances and thresholds.
constexpr double kSweepBudgetS = 600.0;
constexpr double kSingleRunBudgetS = 60.0;
constexpr double kBaselinePdfGap = 0.02;
constexpr double kWormholeSdPdf = 0.95;
constexpr double kLoopAodvPdf = 0.1;
constexpr double kRecoveredPdf = 0.9;
constexpr double kPdfDropFactor = 0.6;
constexpr double kSdRobustFactor = 0.9;
constexpr double kRerrFactor = 3.0;
constexpr double kTrendFromFraction = 10.0;
constexpr int kPropertySeeds = 50;
constexpr int kDigestSamples = 10000;

const std::array<AttackKind, 3> kKinds = {AttackKind::Wormhole, AttackKind::Byzantine, AttackKind::Blackhole};

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  void Require (bool ok, const std::string &why)
  {
    if (!ok)
      {
        if (!pass)
          {
            detail << "; ";
          }
        pass = false;
        detail << why;
      }
  }
};

int g_failures = 0;

void
Report (int number, const std::string &name, const Outcome &o, const std::string &summary)
{
  std::cout << "criterion " << number << " " << (o.pass ? "PASS" : "FAIL") << " " << name << ": " << summary;
  if (!o.pass)
    {
      std::cout << " | " << o.detail.str ();
    }
  std::cout << std::endl;
  g_failures += o.pass ? 0 : 1;
}

std::string
Fmt (double v, int digits = 4)
{
  std::ostringstream s;
  s.setf (std::ios::fixed);
  s.precision (digits);
  s << v;
  return s.str ();
}

double
Seconds (std::chrono::steady_clock::time_point since)
{
  return std::chrono::duration<double> (std::chrono::steady_clock::now () - since).count ();
}

std::map<std::string, std::string>
ReadTree (const fs::path &root)
{
  std::map<std::string, std::string> out;
  for (const auto &e : fs::recursive_directory_iterator (root))
    {
      if (e.is_regular_file ())
        {
          std::ifstream f (e.path (), std::ios::binary);
          std::stringstream buf;
          buf << f.rdbuf ();
          out[fs::relative (e.path (), root).string ()] = buf.str ();
        }
    }
  return out;
}

double
FlowPdf (const World &w, uint32_t flow, SimTime sentAfter = SimTime{})
{
  uint64_t gen = 0, del = 0;
  for (const auto &[key, e] : w.Ledger ().Entries ())
    {
      if (key.first == flow && e.sentAt >= sentAfter)
        {
          ++gen;
          del += e.deliveredAt ? 1 : 0;
        }
    }
  return gen ? static_cast<double> (del) / static_cast<double> (gen) : 0.0;
}

bool
HasRepeat (const std::vector<NodeId> &trace)
{
  std::set<NodeId> s (trace.begin (), trace.end ());
  return s.size () != trace.size ();
}

ScenarioConfig
Scripted (std::vector<Vec2> positions, NodeId src, NodeId dest, double duration, ProtocolKind protocol)
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
  c.protocol = protocol;
  return c;
}

// 1. Determinism and runtime.
void
CheckDeterminism (const ScenarioConfig &base, const fs::path &work, SweepResult &first)
{
  Outcome o;
  auto t0 = std::chrono::steady_clock::now ();
  first = RunSweep (base, SweepSpec{}, (work / "a").string ());
  double sweepS = Seconds (t0);
  RunSweep (base, SweepSpec{}, (work / "b").string ());
  auto a = ReadTree (work / "a");
  auto b = ReadTree (work / "b");
  o.Require (!a.empty () && a == b, "sweep outputs differ between identical runs");

  double worst = 0.0;
  for (AttackKind kind : kKinds)
    {
      for (ProtocolKind p : {ProtocolKind::Aodv, ProtocolKind::SdAodv})
        {
          ScenarioConfig c = base;
          c.nodeCount = 100;
          c.protocol = p;
          c.attack.kind = kind;
          c.attack.maliciousFraction = 30;
          auto t1 = std::chrono::steady_clock::now ();
          RunOne (c);
          worst = std::max (worst, Seconds (t1));
        }
    }
  o.Require (sweepS < kSweepBudgetS, "sweep took " + Fmt (sweepS, 1) + " s");
  o.Require (worst < kSingleRunBudgetS, "slowest 100-node run took " + Fmt (worst, 1) + " s");
  Report (1, "determinism", o,
          std::to_string (a.size ()) + " files byte-identical across two sweeps of " +
              std::to_string (first.runs.size ()) + " runs; sweep " + Fmt (sweepS, 1) +
              " s; slowest 100-node run " + Fmt (worst, 2) + " s");
}

// 2. AODV and SD-AODV deliver the same packets without adversaries.
void
CheckBaselineEquivalence (const ScenarioConfig &base)
{
  Outcome o;
  double worstGap = 0.0;
  size_t worstDiff = 0;
  for (uint64_t seed = 1; seed <= 5; ++seed)
    {
      std::set<PacketLedger::Key> delivered[2];
      double pdf[2];
      int i = 0;
      for (ProtocolKind p : {ProtocolKind::Aodv, ProtocolKind::SdAodv})
        {
          ScenarioConfig c = base;
          c.seed = seed;
          c.protocol = p;
          World w (c);
          w.Run ();
          for (const auto &[key, e] : w.Ledger ().Entries ())
            {
              if (e.deliveredAt)
                {
                  delivered[i].insert (key);
                }
            }
          pdf[i] = w.Report ().pdf.value_or (0.0);
          ++i;
        }
      double gap = std::abs (pdf[0] - pdf[1]);
      std::vector<PacketLedger::Key> sym;
      std::set_symmetric_difference (delivered[0].begin (), delivered[0].end (), delivered[1].begin (),
                                     delivered[1].end (), std::back_inserter (sym));
      worstGap = std::max (worstGap, gap);
      worstDiff = std::max (worstDiff, sym.size ());
      o.Require (gap <= kBaselinePdfGap, "seed " + std::to_string (seed) + " pdf gap " + Fmt (gap));
      o.Require (sym.empty (), "seed " + std::to_string (seed) + ": " + std::to_string (sym.size ()) +
                                   " packets delivered by only one protocol");
    }
  Report (2, "baseline equivalence", o,
          "max |pdf gap| " + Fmt (worstGap) + ", max delivered-set difference " + std::to_string (worstDiff));
}

// 3. Wormhole line: A B C D F H on a line, E near A and B, G near H.
void
CheckWormholeTopology ()
{
  enum : NodeId { A, B, C, D, F, H, E, G };
  const std::vector<Vec2> pos = {{0, 0}, {200, 0}, {400, 0}, {600, 0}, {800, 0}, {1000, 0}, {100, 150}, {1000, 200}};
  Outcome o;
  double pdf[2];
  bool flaggedE = false;
  uint64_t restored = 0;
  for (ProtocolKind p : {ProtocolKind::Aodv, ProtocolKind::SdAodv})
    {
      ScenarioConfig c = Scripted (pos, A, H, 20, p);
      c.attack.kind = AttackKind::Wormhole;
      c.attack.explicitNodes = {E, G};
      c.attack.tunnelPairs = {{E, G}};
      World w (c);
      w.Run ();
      pdf[static_cast<int> (p)] = FlowPdf (w, 0);
      if (p == ProtocolKind::Aodv)
        {
          o.Require (w.Ledger ().DeliveredCount () == 0,
                     "AODV delivered " + std::to_string (w.Ledger ().DeliveredCount ()) + " packets");
        }
      else
        {
          for (const auto &ev : w.SuspectEvents ())
            {
              flaggedE |= ev.suspect == E;
            }
          for (NodeId n = 0; n < c.nodeCount; ++n)
            {
              restored += w.Agent (n).Counters ().digestRestored;
            }
        }
    }
  o.Require (flaggedE, "E never flagged under SD-AODV");
  o.Require (restored > 0, "no RREQ destination restored");
  o.Require (pdf[1] >= kWormholeSdPdf, "SD-AODV pdf " + Fmt (pdf[1]));
  Report (3, "wormhole topology", o,
          "AODV pdf " + Fmt (pdf[0]) + ", SD-AODV pdf " + Fmt (pdf[1]) + ", E flagged " + (flaggedE ? "yes" : "no") +
              ", restored RREQs " + std::to_string (restored));
}

// 4. Byzantine loop: B A C D H with C looping, plus a detour A X1..X5 H.
void
CheckByzantineTopology ()
{
  enum : NodeId { B, A, C, D, H, X1, X2, X3, X4, X5 };
  const std::vector<Vec2> pos = {{0, 0},     {200, 0},   {400, 0},   {600, 0},   {800, 0},
                                 {150, 230}, {300, 420}, {500, 470}, {700, 420}, {850, 230}};
  Outcome o;
  double aodvPdf = 0.0, sdPdf = 0.0;
  size_t loops = 0, nonSimpleAfter = 0;
  for (ProtocolKind p : {ProtocolKind::Aodv, ProtocolKind::SdAodv})
    {
      ScenarioConfig c = Scripted (pos, B, H, 30, p);
      c.attack.kind = AttackKind::Byzantine;
      c.attack.explicitNodes = {C};
      World w (c);
      w.Run ();
      if (p == ProtocolKind::Aodv)
        {
          aodvPdf = FlowPdf (w, 0);
          for (const auto &[key, e] : w.Ledger ().Entries ())
            {
              loops += HasRepeat (e.trace) ? 1 : 0;
            }
          continue;
        }
      SimTime detected = SimTime::Max ();
      for (const auto &ev : w.SuspectEvents ())
        {
          if (ev.suspect == C)
            {
              detected = std::min (detected, ev.at);
            }
        }
      o.Require (detected != SimTime::Max (), "C never flagged under SD-AODV");
      for (const auto &[key, e] : w.Ledger ().Entries ())
        {
          if (e.deliveredAt && e.sentAt > detected && HasRepeat (e.trace))
            {
              ++nonSimpleAfter;
            }
        }
      sdPdf = FlowPdf (w, 0);
    }
  o.Require (loops > 0, "no looped trace under AODV");
  o.Require (aodvPdf <= kLoopAodvPdf, "AODV pdf " + Fmt (aodvPdf));
  o.Require (nonSimpleAfter == 0, std::to_string (nonSimpleAfter) + " SD-AODV traces revisit a node after detection");
  o.Require (sdPdf >= kRecoveredPdf, "SD-AODV pdf " + Fmt (sdPdf));
  Report (4, "byzantine topology", o,
          "AODV pdf " + Fmt (aodvPdf) + " with " + std::to_string (loops) + " looped traces, SD-AODV pdf " +
              Fmt (sdPdf) + " with " + std::to_string (nonSimpleAfter) + " non-simple traces after detection");
}

// 5. Blackhole line: A B C D on a line, E next to A only.
void
CheckBlackholeTopology ()
{
  enum : NodeId { A, B, C, D, E };
  const std::vector<Vec2> pos = {{0, 0}, {200, 0}, {400, 0}, {600, 0}, {0, 200}};
  Outcome o;
  double aodvPdf = 0.0, sdPdf = 0.0;
  bool flagged = false, avoids = false;
  uint64_t rejected = 0;
  for (ProtocolKind p : {ProtocolKind::Aodv, ProtocolKind::SdAodv})
    {
      ScenarioConfig c = Scripted (pos, A, D, 20, p);
      c.attack.kind = AttackKind::Blackhole;
      c.attack.explicitNodes = {E};
      World w (c);
      w.Run ();
      if (p == ProtocolKind::Aodv)
        {
          aodvPdf = FlowPdf (w, 0);
          continue;
        }
      sdPdf = FlowPdf (w, 0);
      rejected = w.Agent (A).Counters ().rrepRejected;
      for (const auto &ev : w.SuspectEvents ())
        {
          flagged |= ev.detector == A && ev.suspect == E && ev.kind == AttackKind::Blackhole;
        }
      const RouteEntry *r = w.Agent (A).Routes ().Lookup (D);
      avoids = r != nullptr && r->nextHop == B;
    }
  o.Require (aodvPdf == 0.0, "AODV pdf " + Fmt (aodvPdf));
  o.Require (rejected > 0, "forged RREP never rejected");
  o.Require (flagged, "E not flagged by A");
  o.Require (avoids, "A's route to D does not go through B");
  o.Require (sdPdf >= kRecoveredPdf, "SD-AODV pdf " + Fmt (sdPdf));
  Report (5, "blackhole topology", o,
          "AODV pdf " + Fmt (aodvPdf) + ", SD-AODV pdf " + Fmt (sdPdf) + ", forged RREPs rejected " +
              std::to_string (rejected));
}

const MeanRow &
MeanOf (const SweepResult &r, ProtocolKind p, AttackKind a, double f)
{
  const MeanRow *m = r.Mean (p, a, a == AttackKind::None ? 0.0 : f);
  if (m == nullptr)
    {
      throw std::runtime_error ("missing sweep point");
    }
  return *m;
}

std::vector<double>
AttackFractions (const SweepResult &r)
{
  std::set<double> fs;
  for (const auto &m : r.means)
    {
      if (m.attack != AttackKind::None)
        {
          fs.insert (m.fraction);
        }
    }
  return {fs.begin (), fs.end ()};
}

// 6. AODV PDF falls under every attack.
void
CheckPdfTrend (const SweepResult &r)
{
  Outcome o;
  std::ostringstream summary;
  auto fractions = AttackFractions (r);
  double base = MeanOf (r, ProtocolKind::Aodv, AttackKind::None, 0).pdf.value_or (0.0);
  for (AttackKind a : kKinds)
    {
      double last = MeanOf (r, ProtocolKind::Aodv, a, fractions.back ()).pdf.value_or (0.0);
      summary << ToString (a) << " " << Fmt (last) << " ";
      o.Require (last <= kPdfDropFactor * base, std::string (ToString (a)) + " at max fraction " + Fmt (last) +
                                                    " > " + Fmt (kPdfDropFactor * base));
      const MeanRow *prev = &MeanOf (r, ProtocolKind::Aodv, AttackKind::None, 0);
      for (double f : fractions)
        {
          const MeanRow &cur = MeanOf (r, ProtocolKind::Aodv, a, f);
          double se = std::max (prev->pdfSe.value_or (0.0), cur.pdfSe.value_or (0.0));
          o.Require (cur.pdf.value_or (0.0) <= prev->pdf.value_or (0.0) + se,
                     std::string (ToString (a)) + " rises beyond 1 SE at " + Fmt (f, 0) + "%");
          prev = &cur;
        }
    }
  Report (6, "AODV pdf trend", o, "baseline " + Fmt (base) + "; at max fraction " + summary.str ());
}

// 7. SD-AODV holds its PDF.
void
CheckSdRobustness (const SweepResult &r)
{
  Outcome o;
  double base = MeanOf (r, ProtocolKind::SdAodv, AttackKind::None, 0).pdf.value_or (0.0);
  double worst = 1.0;
  for (AttackKind a : kKinds)
    {
      for (double f : AttackFractions (r))
        {
          double v = MeanOf (r, ProtocolKind::SdAodv, a, f).pdf.value_or (0.0);
          worst = std::min (worst, v);
          o.Require (v >= kSdRobustFactor * base,
                     std::string (ToString (a)) + " at " + Fmt (f, 0) + "% pdf " + Fmt (v));
        }
    }
  Report (7, "SD-AODV pdf robustness", o,
          "baseline " + Fmt (base) + ", lowest " + Fmt (worst) + ", floor " + Fmt (kSdRobustFactor * base));
}

// 8. Blackhole route errors dwarf SD-AODV's.
void
CheckRouteErrors (const SweepResult &r)
{
  Outcome o;
  double minRatio = 1e300;
  for (double f : AttackFractions (r))
    {
      if (f < kTrendFromFraction)
        {
          continue;
        }
      double bh = MeanOf (r, ProtocolKind::Aodv, AttackKind::Blackhole, f).routeErrors;
      double sd = MeanOf (r, ProtocolKind::SdAodv, AttackKind::Blackhole, f).routeErrors;
      double ratio = sd > 0 ? bh / sd : 1e300;
      minRatio = std::min (minRatio, ratio);
      o.Require (bh >= kRerrFactor * sd, "at " + Fmt (f, 0) + "% " + Fmt (bh, 1) + " vs " + Fmt (sd, 1));
    }
  Report (8, "route-error ordering", o, "smallest blackhole-AODV / SD-AODV ratio " + Fmt (minRatio, 2));
}

// 9. SD-AODV delay sits between clean AODV and byzantine AODV.
void
CheckDelay (const SweepResult &r)
{
  Outcome o;
  double clean = MeanOf (r, ProtocolKind::Aodv, AttackKind::None, 0).avgDelay.value_or (0.0);
  double lo = 1e300, hi = 0.0, byzMin = 1e300;
  for (double f : AttackFractions (r))
    {
      if (f < kTrendFromFraction)
        {
          continue;
        }
      double byz = MeanOf (r, ProtocolKind::Aodv, AttackKind::Byzantine, f).avgDelay.value_or (0.0);
      byzMin = std::min (byzMin, byz);
      double sum = 0.0;
      for (AttackKind a : kKinds)
        {
          double v = MeanOf (r, ProtocolKind::SdAodv, a, f).avgDelay.value_or (0.0);
          sum += v;
          lo = std::min (lo, v);
          hi = std::max (hi, v);
          o.Require (v >= clean, std::string (ToString (a)) + " at " + Fmt (f, 0) + "% below clean AODV");
          o.Require (v <= byz, std::string (ToString (a)) + " at " + Fmt (f, 0) + "% above byzantine AODV");
        }
      double combined = sum / static_cast<double> (kKinds.size ());
      o.Require (combined >= clean && combined <= byz, "combined curve out of order at " + Fmt (f, 0) + "%");
    }
  Report (9, "delay ordering", o,
          "clean AODV " + Fmt (clean) + " s <= SD-AODV [" + Fmt (lo) + ", " + Fmt (hi) + "] s <= byzantine AODV >= " +
              Fmt (byzMin) + " s");
}

// 10. Protocol invariants under randomized configurations.
void
CheckProperties ()
{
  Outcome o;
  RngStream pick (2024, "property-configs");
  uint64_t installs = 0;
  for (int i = 1; i <= kPropertySeeds; ++i)
    {
      ScenarioConfig c;
      c.seed = static_cast<uint64_t> (i);
      c.nodeCount = 20 + static_cast<uint32_t> (pick.UniformInt (41));
      c.simDuration = 30;
      c.traffic.flows = 1 + static_cast<uint32_t> (pick.UniformInt (8));
      c.traffic.stop = 29;
      c.protocol = pick.Bernoulli (0.5) ? ProtocolKind::SdAodv : ProtocolKind::Aodv;
      c.attack.kind = static_cast<AttackKind> (pick.UniformInt (4));
      c.attack.maliciousFraction = c.attack.kind == AttackKind::None ? 0.0 : 5.0 * (1 + pick.UniformInt (6));
      if (pick.Bernoulli (0.3))
        {
          c.medium.collisionMode = CollisionMode::SlottedLoss;
          c.medium.lossProbability = 0.05;
        }
      const std::string tag = "config " + std::to_string (i) + ": ";
      WorldOptions opts;
      opts.trackRreq = true;
      opts.trackRoutes = true;
      World w (c, opts);
      w.Run ();

      for (const auto &[key, n] : w.RreqAcceptances ())
        {
          if (n > 1)
            {
              o.Require (false, tag + "RREQ handled twice at one node");
              break;
            }
        }
      o.Require (w.SeqRegressions () == 0, tag + "destination sequence number went backwards");
      installs += w.RouteInstalls ();

      const PacketLedger &l = w.Ledger ();
      bool exclusive = true;
      for (const auto &[key, e] : l.Entries ())
        {
          exclusive &= !(e.deliveredAt && e.dropReason);
          exclusive &= !e.deliveredAt || *e.deliveredAt >= e.sentAt;
        }
      o.Require (exclusive, tag + "ledger entry both delivered and dropped");
      o.Require (l.GeneratedCount () == l.DeliveredCount () + l.DroppedCount () + l.InFlightCount (),
                 tag + "ledger does not balance");
      o.Require (l.RepeatedTerminations () == 0, tag + "packet terminated twice");

      uint64_t rerr = 0;
      for (NodeId n = 0; n < c.nodeCount; ++n)
        {
          rerr += w.Agent (n).Counters ().rerrGenerated + w.Agent (n).Counters ().digestDrops;
        }
      MetricsReport rep = w.Report ();
      o.Require (rep.routeErrors == rerr, tag + "route_errors disagrees with the agents");
      if (c.attack.kind == AttackKind::None)
        {
          o.Require (w.SuspectEvents ().empty (), tag + "suspect flagged without adversaries");
        }
      const auto &mc = w.GetMedium ().Counters ();
      o.Require (mc.deliveryAttempts == mc.delivered + mc.droppedLoss + mc.droppedOutOfRange + mc.InFlight (),
                 tag + "frame conservation");
      StatFile back = ParseStat (RenderStat (rep, EchoConfig (c)));
      o.Require (back.report == rep, tag + "STAT round trip changed the report");
    }

  Simulator sim;
  SeenRreqCache cache (sim, SimTime::Seconds (5));
  SuspectList suspects;
  RngStream r (99, "digest-property");
  int falsePositives = 0;
  for (int i = 0; i < kDigestSamples; ++i)
    {
      RreqPacket p;
      p.src = static_cast<NodeId> (r.NextU64 ());
      p.dest = static_cast<NodeId> (r.NextU64 ());
      p.bcastId = static_cast<uint32_t> (r.NextU64 ());
      p.digest = ComputeDigest (p.dest);
      falsePositives += VerifyRreqDigest (p, 1, cache, suspects, sim.Now ()) != DigestCheck::Clean;
    }
  o.Require (falsePositives == 0, std::to_string (falsePositives) + " clean RREQs flagged");
  Report (10, "protocol properties", o,
          std::to_string (kPropertySeeds) + " randomized configs, " + std::to_string (installs) +
              " route installs checked, " + std::to_string (kDigestSamples) + " clean digests, " +
              std::to_string (falsePositives) + " false positives");
}

} // namespace

int
main (int argc, char **argv)
{
  CLI::App app{"Acceptance criteria"};
  std::string config, workDir;
  std::vector<int> only;
  app.add_option ("--config", config, "Base scenario JSON (defaults when omitted)");
  app.add_option ("--work", workDir, "Directory for sweep output (a temporary directory when omitted)");
  app.add_option ("--only", only, "Run just these criteria")->delimiter (',');
  CLI11_PARSE (app, argc, argv);

  auto wanted = [&only] (int n) { return only.empty () || std::find (only.begin (), only.end (), n) != only.end (); };
  ScenarioConfig base = config.empty () ? ScenarioConfig{} : LoadScenario (config);
  fs::path work = workDir.empty () ? fs::temp_directory_path () / "manet_acceptance" : fs::path (workDir);
  fs::remove_all (work);

  try
    {
      SweepResult sweep;
      bool needSweep = false;
      for (int n : {1, 6, 7, 8, 9})
        {
          needSweep |= wanted (n);
        }
      if (needSweep)
        {
          if (wanted (1))
            {
              CheckDeterminism (base, work, sweep);
            }
          else
            {
              sweep = RunSweep (base, SweepSpec{});
            }
        }
      if (wanted (2))
        CheckBaselineEquivalence (base);
      if (wanted (3))
        CheckWormholeTopology ();
      if (wanted (4))
        CheckByzantineTopology ();
      if (wanted (5))
        CheckBlackholeTopology ();
      if (wanted (6))
        CheckPdfTrend (sweep);
      if (wanted (7))
        CheckSdRobustness (sweep);
      if (wanted (8))
        CheckRouteErrors (sweep);
      if (wanted (9))
        CheckDelay (sweep);
      if (wanted (10))
        CheckProperties ();
    }
  catch (const std::exception &e)
    {
      std::cout << "acceptance aborted: " << e.what () << std::endl;
      return 2;
    }
  if (workDir.empty ())
    {
      fs::remove_all (work);
    }
  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string (g_failures) + " criteria failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
