// Shared wireless medium standing in for IEEE 802.11. Each node has a FIFO
// interface queue and a frame holds the sender's transmitter for its airtime.
// With carrier sense a node also waits while any node in its range is on the
// air. Receivers are the unit-disk neighbours at transmission start; the
// optional slotted-loss mode drops each delivery independently. A lost
// unicast is retried like an unacknowledged 802.11 frame and reported as a
// link failure once the retries run out.
#ifndef MANET_MEDIUM_H
#define MANET_MEDIUM_H

#include "manet/field.h"
#include "manet/packet.h"
#include "manet/sim_core.h"

#include <deque>
#include <functional>
#include <memory>
#include <vector>

namespace manet {

enum class CollisionMode
{
  Ideal,
  SlottedLoss,
};

struct MediumConfig
{
  double bandwidthBps = 2'000'000.0;
  double rangeM = 250.0;
  double macOverheadS = 0.0005;
  CollisionMode collisionMode = CollisionMode::Ideal;
  double lossProbability = 0.0;
  uint32_t queueLimit = 50;
  /// Defer while a neighbour is transmitting.
  bool carrierSense = true;
  /// Extra attempts for a lost unicast frame before the sender is told the
  /// link failed. Broadcasts are never retried.
  uint32_t macRetries = 7;
  /// Frames that waited longer than this in the interface queue are
  /// discarded instead of sent. Zero keeps them forever.
  SimTime maxQueueDelay = SimTime::Seconds (0.5);
};

/// size * 8 / bandwidth + per-hop MAC overhead.
SimTime TransmissionTime (uint32_t sizeBytes, const MediumConfig &cfg);

struct Frame
{
  NodeId src = 0;
  NodeId linkDst = kBroadcast;
  Packet payload;
  uint32_t sizeBytes = 0;
  SimTime enqueued;
};

using FramePtr = std::shared_ptr<const Frame>;

struct MediumCounters
{
  uint64_t transmissions = 0;
  uint64_t deliveryAttempts = 0;
  uint64_t delivered = 0;
  uint64_t droppedLoss = 0;
  uint64_t droppedOutOfRange = 0;
  uint64_t droppedQueueFull = 0;
  uint64_t droppedStale = 0;
  uint64_t tapped = 0;
  /// Times a transmission start was pushed back by a busy channel.
  uint64_t deferrals = 0;
  /// Unicast attempts repeated after a loss.
  uint64_t retries = 0;

  uint64_t InFlight () const { return deliveryAttempts - delivered - droppedLoss - droppedOutOfRange; }
};

class Medium
{
public:
  struct Handlers
  {
    /// Frame arrived at `rx` as broadcast or as its addressed unicast.
    std::function<void (NodeId rx, const Frame &)> deliver;
    /// Observe-only copy of a unicast addressed to someone else.
    std::function<void (NodeId rx, const Frame &)> tap;
    /// Unicast could not reach its link destination; called in the same event step.
    std::function<void (const Frame &)> linkFailure;
    /// Frame rejected because the sender's interface queue was full.
    std::function<void (const Frame &)> queueDrop;
  };

  Medium (Simulator &sim, MediumConfig cfg, RngStream lossRng, const std::vector<NodePosition> &positions);

  void SetHandlers (Handlers h) { m_handlers = std::move (h); }

  /// Queue a frame at its sender's interface. Size is derived from the payload.
  void Transmit (NodeId src, NodeId linkDst, Packet payload);
  void SetPromiscuous (NodeId node, bool enable);

  const MediumConfig &Config () const { return m_cfg; }
  const MediumCounters &Counters () const { return m_counters; }
  size_t QueueLength (NodeId node) const;

private:
  struct Interface
  {
    std::deque<FramePtr> queue;
    bool busy = false;
    bool promiscuous = false;
    SimTime onAirUntil;
  };

  Interface &Iface (NodeId n);
  void StartNext (NodeId n);
  /// Latest end of any transmission currently audible at `n`.
  SimTime ChannelFreeAt (NodeId n) const;
  bool Exists (NodeId n) const { return n < m_positions.size (); }

  Simulator &m_sim;
  MediumConfig m_cfg;
  RngStream m_lossRng;
  const std::vector<NodePosition> &m_positions;
  std::vector<Interface> m_ifaces;
  Handlers m_handlers;
  MediumCounters m_counters;
};

} // namespace manet

#endif
