#include "manet/telemetry.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace manet {

std::vector<SimTime>
CbrSendTimes (const CbrFlow &flow)
{
  std::vector<SimTime> out;
  int64_t start = SimTime::Seconds (flow.start).GetMicros ();
  int64_t stop = SimTime::Seconds (flow.stop).GetMicros ();
  int64_t step = SimTime::Seconds (flow.interval).GetMicros ();
  if (stop <= start || step <= 0)
    {
      return out;
    }
  for (int64_t t = start; t <= stop; t += step)
    {
      out.push_back (SimTime::Micros (t));
    }
  return out;
}

void
PacketLedger::Generated (uint32_t flow, uint32_t seq, SimTime at)
{
  m_entries[{flow, seq}] = LedgerEntry{at, std::nullopt, std::nullopt, {}};
}

bool
PacketLedger::Delivered (uint32_t flow, uint32_t seq, SimTime at, const std::vector<NodeId> &trace)
{
  auto it = m_entries.find ({flow, seq});
  if (it == m_entries.end ())
    {
      return false;
    }
  LedgerEntry &e = it->second;
  if (e.deliveredAt || e.dropReason)
    {
      ++m_repeats;
      return false;
    }
  e.deliveredAt = at;
  e.trace = trace;
  ++m_delivered;
  m_delaySumUs += static_cast<uint64_t> ((at - e.sentAt).GetMicros ());
  return true;
}

bool
PacketLedger::Dropped (uint32_t flow, uint32_t seq, DropReason why, const std::vector<NodeId> &trace)
{
  auto it = m_entries.find ({flow, seq});
  if (it == m_entries.end ())
    {
      return false;
    }
  LedgerEntry &e = it->second;
  if (e.deliveredAt || e.dropReason)
    {
      ++m_repeats;
      return false;
    }
  e.dropReason = why;
  e.trace = trace;
  ++m_dropped;
  ++m_byReason[static_cast<size_t> (why)];
  return true;
}

std::string_view
CounterName (NodeCounter c)
{
  static constexpr std::array<std::string_view, kNodeCounterCount> kNames = {
    "frames_sent",     "frames_received", "bytes_sent",      "bytes_received", "rreq_sent",
    "rreq_received",   "rrep_sent",       "rrep_received",   "rerr_sent",      "rerr_received",
    "data_sent",       "data_received",   "probe_sent",      "probe_received", "data_originated",
    "data_delivered",  "data_forwarded",  "data_dropped",    "route_errors",   "suspects_flagged",
  };
  return kNames.at (static_cast<size_t> (c));
}

void
CountFrame (NodeCounters &c, const Packet &p, uint32_t sizeBytes, bool sent)
{
  c[sent ? NodeCounter::FramesSent : NodeCounter::FramesReceived] += 1;
  c[sent ? NodeCounter::BytesSent : NodeCounter::BytesReceived] += sizeBytes;
  NodeCounter k;
  switch (TypeOf (p))
    {
    case PacketType::Rreq:
      k = sent ? NodeCounter::RreqSent : NodeCounter::RreqReceived;
      break;
    case PacketType::Rrep:
      k = sent ? NodeCounter::RrepSent : NodeCounter::RrepReceived;
      break;
    case PacketType::Rerr:
      k = sent ? NodeCounter::RerrSent : NodeCounter::RerrReceived;
      break;
    case PacketType::Data:
      k = sent ? NodeCounter::DataSent : NodeCounter::DataReceived;
      break;
    default:
      k = sent ? NodeCounter::ProbeSent : NodeCounter::ProbeReceived;
      break;
    }
  c[k] += 1;
}

std::string
FormatFixed9 (double x)
{
  char buf[64];
  auto res = std::to_chars (buf, buf + sizeof buf, x, std::chars_format::fixed, 9);
  if (res.ec != std::errc{})
    {
      throw std::runtime_error ("number does not fit the STAT format");
    }
  return std::string (buf, res.ptr);
}

double
Canonical (double x)
{
  std::string s = FormatFixed9 (x);
  double out = 0.0;
  std::from_chars (s.data (), s.data () + s.size (), out);
  return out;
}

std::optional<double>
ComputePdf (const PacketLedger &ledger)
{
  if (ledger.GeneratedCount () == 0)
    {
      return std::nullopt;
    }
  return Canonical (static_cast<double> (ledger.DeliveredCount ()) / static_cast<double> (ledger.GeneratedCount ()));
}

std::optional<double>
ComputeAvgDelay (const PacketLedger &ledger)
{
  if (ledger.DeliveredCount () == 0)
    {
      return std::nullopt;
    }
  return Canonical (static_cast<double> (ledger.DelaySumMicros ()) / 1e6 /
                    static_cast<double> (ledger.DeliveredCount ()));
}

double
ComputeThroughput (std::span<const uint64_t> bitsReceived, double simSeconds)
{
  if (bitsReceived.empty () || simSeconds <= 0.0)
    {
      return 0.0;
    }
  double sum = 0.0;
  for (uint64_t b : bitsReceived)
    {
      sum += static_cast<double> (b) / simSeconds;
    }
  return Canonical (sum / static_cast<double> (bitsReceived.size ()));
}

MetricsReport
BuildReport (const PacketLedger &ledger, std::vector<NodeCounters> nodes, double simSeconds, uint64_t traceHash)
{
  MetricsReport r;
  r.generated = ledger.GeneratedCount ();
  r.delivered = ledger.DeliveredCount ();
  r.dropped = ledger.DroppedCount ();
  r.inFlight = ledger.InFlightCount ();
  for (size_t i = 0; i < r.droppedByReason.size (); ++i)
    {
      r.droppedByReason[i] = ledger.DroppedCount (static_cast<DropReason> (i));
    }
  r.pdf = ComputePdf (ledger);
  r.avgDelay = ComputeAvgDelay (ledger);
  std::vector<uint64_t> bits;
  for (const auto &n : nodes)
    {
      bits.push_back (n[NodeCounter::BytesReceived] * 8);
      r.routeErrors += n[NodeCounter::RouteErrors];
    }
  r.throughput = ComputeThroughput (bits, simSeconds);
  r.simTime = Canonical (simSeconds);
  r.traceHash = traceHash;
  r.nodes = std::move (nodes);
  return r;
}

namespace {

constexpr std::string_view kNotApplicable = "NA";

std::string
OptionalValue (const std::optional<double> &v)
{
  return v ? FormatFixed9 (*v) : std::string (kNotApplicable);
}

uint64_t
ParseU64 (std::string_view s, std::string_view what)
{
  uint64_t v = 0;
  auto res = std::from_chars (s.data (), s.data () + s.size (), v);
  if (res.ec != std::errc{} || res.ptr != s.data () + s.size ())
    {
      throw std::invalid_argument ("bad integer for " + std::string (what) + ": " + std::string (s));
    }
  return v;
}

uint64_t
ParseHex (std::string_view s)
{
  uint64_t v = 0;
  auto res = std::from_chars (s.data (), s.data () + s.size (), v, 16);
  if (res.ec != std::errc{} || res.ptr != s.data () + s.size ())
    {
      throw std::invalid_argument ("bad trace_hash: " + std::string (s));
    }
  return v;
}

double
ParseDouble (std::string_view s, std::string_view what)
{
  double v = 0.0;
  auto res = std::from_chars (s.data (), s.data () + s.size (), v);
  if (res.ec != std::errc{} || res.ptr != s.data () + s.size ())
    {
      throw std::invalid_argument ("bad number for " + std::string (what) + ": " + std::string (s));
    }
  return v;
}

std::optional<double>
ParseOptional (std::string_view s, std::string_view what)
{
  if (s == kNotApplicable)
    {
      return std::nullopt;
    }
  return ParseDouble (s, what);
}

} // namespace

std::string
RenderStat (const MetricsReport &r, const ConfigEcho &config)
{
  std::ostringstream out;
  out << "# manetsim STAT v1\n";
  out << "# throughput: mean over nodes of bits received (all packet types) / sim_time, in bits/s\n";
  out << "# avg_delay: mean generation-to-delivery time of delivered DATA packets, in seconds\n";
  out << "# medium: not 802.11 DCF; unit-disk range, fixed per-frame airtime, bounded-delay FIFO queues, "
         "carrier-sense deferral, optional Bernoulli loss with unicast retries\n";
  out << "# mobility: random waypoint, zero pause time\n";
  out << "# NA marks a metric with no defined value (nothing generated or delivered)\n";
  for (size_t id = 0; id < r.nodes.size (); ++id)
    {
      for (size_t c = 0; c < kNodeCounterCount; ++c)
        {
          out << "node " << id << ' ' << CounterName (static_cast<NodeCounter> (c)) << ' ' << r.nodes[id].values[c]
              << '\n';
        }
    }
  out << "GLOBAL\n";
  for (const auto &[key, value] : config)
    {
      out << "config " << key << ' ' << value << '\n';
    }
  out << "metric sim_time " << FormatFixed9 (r.simTime) << '\n';
  out << "metric generated " << r.generated << '\n';
  out << "metric delivered " << r.delivered << '\n';
  out << "metric dropped " << r.dropped << '\n';
  out << "metric in_flight " << r.inFlight << '\n';
  for (size_t i = 0; i < r.droppedByReason.size (); ++i)
    {
      out << "metric dropped." << ToString (static_cast<DropReason> (i)) << ' ' << r.droppedByReason[i] << '\n';
    }
  out << "metric pdf " << OptionalValue (r.pdf) << '\n';
  out << "metric avg_delay " << OptionalValue (r.avgDelay) << '\n';
  out << "metric throughput " << FormatFixed9 (r.throughput) << '\n';
  out << "metric route_errors " << r.routeErrors << '\n';
  char hash[17];
  std::snprintf (hash, sizeof hash, "%016llx", static_cast<unsigned long long> (r.traceHash));
  out << "metric trace_hash " << hash << '\n';
  return out.str ();
}

void
WriteStat (const MetricsReport &report, const ConfigEcho &config, const std::string &path)
{
  std::ofstream f (path, std::ios::binary | std::ios::trunc);
  if (!f)
    {
      throw std::runtime_error ("cannot open " + path + " for writing");
    }
  f << RenderStat (report, config);
  if (!f.flush ())
    {
      throw std::runtime_error ("failed writing " + path);
    }
}

StatFile
ParseStat (const std::string &text)
{
  StatFile out;
  MetricsReport &r = out.report;
  std::istringstream in (text);
  std::string line;
  bool global = false;
  std::map<std::string_view, NodeCounter> names;
  for (size_t c = 0; c < kNodeCounterCount; ++c)
    {
      names.emplace (CounterName (static_cast<NodeCounter> (c)), static_cast<NodeCounter> (c));
    }
  while (std::getline (in, line))
    {
      if (line.empty () || line[0] == '#')
        {
          continue;
        }
      if (line == "GLOBAL")
        {
          global = true;
          continue;
        }
      std::istringstream ls (line);
      std::string tag;
      ls >> tag;
      if (!global && tag == "node")
        {
          std::string id, key, value;
          ls >> id >> key >> value;
          uint64_t n = ParseU64 (id, "node id");
          if (n != r.nodes.size () && n + 1 != r.nodes.size ())
            {
              throw std::invalid_argument ("node sections out of order at node " + id);
            }
          if (n == r.nodes.size ())
            {
              r.nodes.emplace_back ();
            }
          auto it = names.find (key);
          if (it == names.end ())
            {
              throw std::invalid_argument ("unknown node counter " + key);
            }
          r.nodes[n][it->second] = ParseU64 (value, key);
          continue;
        }
      if (global && tag == "config")
        {
          std::string key, value;
          ls >> key;
          std::getline (ls, value);
          if (!value.empty () && value[0] == ' ')
            {
              value.erase (0, 1);
            }
          out.config.emplace_back (key, value);
          continue;
        }
      if (global && tag == "metric")
        {
          std::string key, value;
          ls >> key >> value;
          if (key == "sim_time")
            r.simTime = ParseDouble (value, key);
          else if (key == "generated")
            r.generated = ParseU64 (value, key);
          else if (key == "delivered")
            r.delivered = ParseU64 (value, key);
          else if (key == "dropped")
            r.dropped = ParseU64 (value, key);
          else if (key == "in_flight")
            r.inFlight = ParseU64 (value, key);
          else if (key == "pdf")
            r.pdf = ParseOptional (value, key);
          else if (key == "avg_delay")
            r.avgDelay = ParseOptional (value, key);
          else if (key == "throughput")
            r.throughput = ParseDouble (value, key);
          else if (key == "route_errors")
            r.routeErrors = ParseU64 (value, key);
          else if (key == "trace_hash")
            r.traceHash = ParseHex (value);
          else if (key.starts_with ("dropped."))
            {
              bool found = false;
              for (size_t i = 0; i < r.droppedByReason.size (); ++i)
                {
                  if (key.substr (8) == ToString (static_cast<DropReason> (i)))
                    {
                      r.droppedByReason[i] = ParseU64 (value, key);
                      found = true;
                    }
                }
              if (!found)
                {
                  throw std::invalid_argument ("unknown drop reason " + key);
                }
            }
          else
            throw std::invalid_argument ("unknown metric " + key);
          continue;
        }
      throw std::invalid_argument ("unrecognised STAT line: " + line);
    }
  return out;
}

} // namespace manet
