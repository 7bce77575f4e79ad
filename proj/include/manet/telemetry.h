// CBR traffic, per-packet ledger, run metrics and the STAT report file.
#ifndef MANET_TELEMETRY_H
#define MANET_TELEMETRY_H

#include "manet/packet.h"
#include "manet/sim_core.h"
#include "manet/types.h"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace manet {

struct CbrFlow
{
  uint32_t id = 0;
  NodeId src = 0;
  NodeId dest = 0;
  uint16_t packetSize = 512;
  double interval = 0.25;
  double start = 1.0;
  double stop = 99.0;
};

/// start + i * interval for every i with the result <= stop.
std::vector<SimTime> CbrSendTimes (const CbrFlow &flow);

struct LedgerEntry
{
  SimTime sentAt;
  std::optional<SimTime> deliveredAt;
  std::optional<DropReason> dropReason;
  /// Nodes visited, as recorded at delivery or drop.
  std::vector<NodeId> trace;
};

/// One entry per generated DATA packet, keyed by (flow, seq).
class PacketLedger
{
public:
  using Key = std::pair<uint32_t, uint32_t>;

  void Generated (uint32_t flow, uint32_t seq, SimTime at);
  /// Returns false if the packet is unknown or already terminated.
  bool Delivered (uint32_t flow, uint32_t seq, SimTime at, const std::vector<NodeId> &trace);
  bool Dropped (uint32_t flow, uint32_t seq, DropReason why, const std::vector<NodeId> &trace);

  const std::map<Key, LedgerEntry> &Entries () const { return m_entries; }
  uint64_t GeneratedCount () const { return m_entries.size (); }
  uint64_t DeliveredCount () const { return m_delivered; }
  uint64_t DroppedCount () const { return m_dropped; }
  uint64_t InFlightCount () const { return m_entries.size () - m_delivered - m_dropped; }
  uint64_t DroppedCount (DropReason why) const { return m_byReason[static_cast<size_t> (why)]; }
  /// Terminal events reported for packets that had already terminated.
  uint64_t RepeatedTerminations () const { return m_repeats; }
  uint64_t DelaySumMicros () const { return m_delaySumUs; }

private:
  std::map<Key, LedgerEntry> m_entries;
  uint64_t m_delivered = 0;
  uint64_t m_dropped = 0;
  uint64_t m_repeats = 0;
  uint64_t m_delaySumUs = 0;
  std::array<uint64_t, 5> m_byReason{};
};

enum class NodeCounter : size_t
{
  FramesSent,
  FramesReceived,
  BytesSent,
  BytesReceived,
  RreqSent,
  RreqReceived,
  RrepSent,
  RrepReceived,
  RerrSent,
  RerrReceived,
  DataSent,
  DataReceived,
  ProbeSent,
  ProbeReceived,
  DataOriginated,
  DataDelivered,
  DataForwarded,
  DataDropped,
  RouteErrors,
  SuspectsFlagged,
  Count,
};

constexpr size_t kNodeCounterCount = static_cast<size_t> (NodeCounter::Count);
std::string_view CounterName (NodeCounter c);

struct NodeCounters
{
  std::array<uint64_t, kNodeCounterCount> values{};
  uint64_t &operator[] (NodeCounter c) { return values[static_cast<size_t> (c)]; }
  uint64_t operator[] (NodeCounter c) const { return values[static_cast<size_t> (c)]; }
  bool operator== (const NodeCounters &) const = default;
};

/// Counters for a frame of this kind sent/received.
void CountFrame (NodeCounters &c, const Packet &p, uint32_t sizeBytes, bool sent);

struct MetricsReport
{
  uint64_t generated = 0;
  uint64_t delivered = 0;
  uint64_t dropped = 0;
  uint64_t inFlight = 0;
  std::array<uint64_t, 5> droppedByReason{};
  std::optional<double> pdf;
  /// Seconds.
  std::optional<double> avgDelay;
  /// Bits per second.
  double throughput = 0.0;
  uint64_t routeErrors = 0;
  double simTime = 0.0;
  uint64_t traceHash = 0;
  std::vector<NodeCounters> nodes;

  bool operator== (const MetricsReport &) const = default;
};

/// Round to the nine decimals the STAT file prints, so values survive a
/// write/parse round trip unchanged.
double Canonical (double x);
std::string FormatFixed9 (double x);

/// Delivered / generated; nullopt when nothing was generated.
std::optional<double> ComputePdf (const PacketLedger &ledger);
/// Mean delivery delay in seconds over delivered packets; nullopt when none.
std::optional<double> ComputeAvgDelay (const PacketLedger &ledger);
/// Mean over nodes of bits received divided by the run length; 0 for an empty run.
double ComputeThroughput (std::span<const uint64_t> bitsReceived, double simSeconds);

MetricsReport BuildReport (const PacketLedger &ledger, std::vector<NodeCounters> nodes, double simSeconds,
                           uint64_t traceHash);

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

std::string RenderStat (const MetricsReport &report, const ConfigEcho &config);
/// Throws std::runtime_error if the file cannot be written.
void WriteStat (const MetricsReport &report, const ConfigEcho &config, const std::string &path);

struct StatFile
{
  ConfigEcho config;
  MetricsReport report;
};

/// Inverse of RenderStat. Throws std::invalid_argument on malformed input.
StatFile ParseStat (const std::string &text);

} // namespace manet

#endif
