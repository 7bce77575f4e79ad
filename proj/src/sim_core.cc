#include "manet/sim_core.h"

#include <cmath>

namespace manet {

SimTime
SimTime::Seconds (double s)
{
  return SimTime (static_cast<int64_t> (std::llround (s * 1e6)));
}

EventId
Simulator::Schedule (SimTime at, Callback fn)
{
  if (at < m_now)
    {
      throw SchedulerError ("event scheduled in the past: t=" + std::to_string (at.GetMicros ()) +
                            "us, now=" + std::to_string (m_now.GetMicros ()) + "us");
    }
  uint64_t seq = m_nextSeq++;
  m_queue.push (Entry{at, seq});
  m_pending.emplace (seq, std::move (fn));
  return EventId{seq};
}

bool
Simulator::Cancel (EventId id)
{
  return m_pending.erase (id.value) > 0;
}

uint64_t
Simulator::RunUntil (SimTime end)
{
  uint64_t ran = 0;
  while (!m_queue.empty () && m_queue.top ().at <= end)
    {
      Entry e = m_queue.top ();
      m_queue.pop ();
      auto it = m_pending.find (e.seq);
      if (it == m_pending.end ())
        {
          continue; // cancelled
        }
      Callback fn = std::move (it->second);
      m_pending.erase (it);
      m_now = e.at;
      fn ();
      ++ran;
      ++m_executed;
    }
  if (end > m_now)
    {
      m_now = end;
    }
  return ran;
}

uint64_t
Fnv1a64 (std::string_view bytes)
{
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes)
    {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  return h;
}

uint64_t
SplitMix64 (uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream (uint64_t rootSeed, std::string_view label)
  : m_root (rootSeed),
    m_label (label),
    m_engine (SplitMix64 (rootSeed ^ Fnv1a64 (label)))
{
}

double
RngStream::Uniform01 ()
{
  return static_cast<double> (m_engine () >> 11) * 0x1.0p-53;
}

double
RngStream::Uniform (double lo, double hi)
{
  return lo + (hi - lo) * Uniform01 ();
}

uint64_t
RngStream::UniformInt (uint64_t n)
{
  // rejection sampling keeps the draw unbiased
  uint64_t limit = std::numeric_limits<uint64_t>::max () - std::numeric_limits<uint64_t>::max () % n;
  uint64_t x;
  do
    {
      x = m_engine ();
    }
  while (x >= limit);
  return x % n;
}

bool
RngStream::Bernoulli (double p)
{
  if (p <= 0.0)
    {
      return false;
    }
  if (p >= 1.0)
    {
      return true;
    }
  return Uniform01 () < p;
}

} // namespace manet
