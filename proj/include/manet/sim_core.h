// Discrete-event engine: virtual clock, cancellable event queue and
// labelled random streams derived from a single root seed.
#ifndef MANET_SIM_CORE_H
#define MANET_SIM_CORE_H

#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace manet {

/// Virtual time, stored as integer microseconds so that queue ordering is exact.
class SimTime
{
public:
  constexpr SimTime () = default;

  static constexpr SimTime Micros (int64_t us) { return SimTime (us); }
  static SimTime Seconds (double s);
  static constexpr SimTime Max () { return SimTime (std::numeric_limits<int64_t>::max ()); }

  constexpr int64_t GetMicros () const { return m_us; }
  constexpr double GetSeconds () const { return static_cast<double> (m_us) / 1e6; }

  constexpr auto operator<=> (const SimTime &) const = default;
  constexpr SimTime operator+ (SimTime o) const { return SimTime (m_us + o.m_us); }
  constexpr SimTime operator- (SimTime o) const { return SimTime (m_us - o.m_us); }
  constexpr SimTime &operator+= (SimTime o) { m_us += o.m_us; return *this; }

private:
  constexpr explicit SimTime (int64_t us) : m_us (us) {}
  int64_t m_us = 0;
};

/// Opaque handle returned by Simulator::Schedule. Zero is never issued.
struct EventId
{
  uint64_t value = 0;
  bool IsValid () const { return value != 0; }
  auto operator<=> (const EventId &) const = default;
};

class SchedulerError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

class Simulator
{
public:
  using Callback = std::function<void ()>;

  SimTime Now () const { return m_now; }

  /// Enqueue `fn` at absolute time `at`. Throws SchedulerError if `at` is in the past.
  EventId Schedule (SimTime at, Callback fn);
  EventId ScheduleIn (SimTime delay, Callback fn) { return Schedule (m_now + delay, std::move (fn)); }

  /// True iff the event was still pending; it will never run.
  bool Cancel (EventId id);
  bool IsPending (EventId id) const { return m_pending.contains (id.value); }

  /// Execute every event with fire time <= end, then set the clock to `end`.
  uint64_t RunUntil (SimTime end);

  uint64_t ExecutedCount () const { return m_executed; }
  size_t PendingCount () const { return m_pending.size (); }

private:
  struct Entry
  {
    SimTime at;
    uint64_t seq;
    bool operator> (const Entry &o) const { return at != o.at ? at > o.at : seq > o.seq; }
  };

  SimTime m_now;
  uint64_t m_nextSeq = 1;
  uint64_t m_executed = 0;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> m_queue;
  std::unordered_map<uint64_t, Callback> m_pending;
};

/// Named generator: mt19937_64 seeded with splitmix64(root_seed ^ fnv1a64(label)).
/// Floating draws use the top 53 bits so results do not depend on the
/// standard library's distribution implementations.
class RngStream
{
public:
  static constexpr std::string_view kAlgorithm = "mt19937_64<-splitmix64(root^fnv1a64(label)); u01=top53/2^53";

  RngStream (uint64_t rootSeed, std::string_view label);

  uint64_t NextU64 () { return m_engine (); }
  /// Uniform in [0, 1).
  double Uniform01 ();
  /// Uniform in [lo, hi].
  double Uniform (double lo, double hi);
  /// Uniform integer in [0, n). n must be > 0.
  uint64_t UniformInt (uint64_t n);
  bool Bernoulli (double p);

  uint64_t RootSeed () const { return m_root; }
  const std::string &Label () const { return m_label; }

private:
  uint64_t m_root;
  std::string m_label;
  std::mt19937_64 m_engine;
};

/// Same as constructing RngStream directly; mirrors the operation name used in docs.
inline RngStream DeriveRng (uint64_t rootSeed, std::string_view label) { return RngStream (rootSeed, label); }

uint64_t Fnv1a64 (std::string_view bytes);
uint64_t SplitMix64 (uint64_t x);

} // namespace manet

#endif
