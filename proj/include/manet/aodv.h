// Per-node AODV routing agent: RREQ flooding with duplicate suppression,
// RREP along the reverse path, sequence-number freshness, route lifetimes,
// RERR on broken or missing routes. When running SD-AODV the agent also
// applies the digest, next-hop and RREP checks from sdaodv.h.
#ifndef MANET_AODV_H
#define MANET_AODV_H

#include "manet/medium.h"
#include "manet/packet.h"
#include "manet/routing_table.h"
#include "manet/sdaodv.h"
#include "manet/types.h"

#include <deque>
#include <map>
#include <memory>
#include <optional>

namespace manet {

struct AodvConfig
{
  SimTime routeLifetime = SimTime::Seconds (3.0);
  SimTime seenRreqLifetime = SimTime::Seconds (5.0);
  uint8_t initialTtl = 35;
  SimTime discoveryTimeout = SimTime::Seconds (1.0);
  uint32_t discoveryRetries = 2;
  uint32_t bufferLimit = 64;
  uint8_t dataHopBudget = 64;
  /// Honest nodes delay RREQ rebroadcasts by U[0, jitter].
  SimTime broadcastJitter = SimTime::Seconds (0.01);
};

enum class RreqAction
{
  Discard,
  Forward,
  Reply,
  Dropped, // failed the SD-AODV digest check
};

enum class RrepAction
{
  InstallForward,
  InstallDeliver,
  Discard,
  Verifying,
};

enum class DataAction
{
  Deliver,
  Forward,
  Rerr,
  Dropped,
  Rerouting, // SD-AODV detected a loop and is finding a new route
};

enum class SendResult
{
  Forwarded,
  BufferedDiscovery,
  Buffered,
  Dropped,
};

enum class RrepVerdict
{
  Accept,
  RejectFlag,
};

class AodvAgent;

/// Services the agent needs from the world it lives in.
class NodeEnv
{
public:
  virtual ~NodeEnv () = default;
  virtual Simulator &Sim () = 0;
  virtual void Send (NodeId from, NodeId linkDst, Packet p) = 0;
  virtual void DataDelivered (NodeId at, const DataPacket &p) = 0;
  virtual void DataDropped (NodeId at, const DataPacket &p, DropReason why) = 0;
  virtual void RouteError (NodeId at) = 0;
  virtual void SuspectFlagged (NodeId at, NodeId suspect, AttackKind kind) {}
  virtual void RreqHandled (NodeId at, const RreqPacket &p, NodeId prevHop, RreqAction a) {}
  virtual void RouteInstalled (NodeId at, const RouteEntry &e) {}
  /// Zero-delay out-of-band link used by wormhole pairs.
  virtual void Tunnel (NodeId from, NodeId to, const RreqPacket &p) {}
};

/// Hooks through which a malicious node subverts the honest state machine.
/// A hook that returns a value (or true) has fully handled the packet.
class Behavior
{
public:
  virtual ~Behavior () = default;
  virtual AttackKind Kind () const = 0;
  virtual std::optional<RreqAction> OnRreq (AodvAgent &self, RreqPacket &rreq, NodeId prevHop)
  {
    return std::nullopt;
  }
  virtual bool OnTunneledRreq (AodvAgent &self, const RreqPacket &rreq) { return false; }
  virtual bool OnRrep (AodvAgent &self, RrepPacket &rrep, NodeId prevHop) { return false; }
  virtual std::optional<DataAction> OnData (AodvAgent &self, DataPacket &data, NodeId prevHop)
  {
    return std::nullopt;
  }
  virtual bool OnProbe (AodvAgent &self, const ProbePacket &probe, NodeId prevHop) { return false; }
};

struct AgentCounters
{
  uint64_t rreqOriginated = 0;
  uint64_t rreqForwarded = 0;
  uint64_t rrepOriginated = 0;
  uint64_t rrepForwarded = 0;
  uint64_t rerrGenerated = 0;
  uint64_t digestDrops = 0;
  uint64_t digestRestored = 0;
  uint64_t dataForwarded = 0;
  uint64_t probesSent = 0;
  uint64_t rrepRejected = 0;
  /// Checks dropped without a verdict because the probe path broke.
  uint64_t verificationsAbandoned = 0;
};

class AodvAgent
{
public:
  AodvAgent (NodeId id, NodeEnv &env, ProtocolKind protocol, const AodvConfig &cfg, const SdAodvConfig &sdCfg,
             RngStream jitter);
  ~AodvAgent ();
  AodvAgent (const AodvAgent &) = delete;
  AodvAgent &operator= (const AodvAgent &) = delete;

  NodeId Id () const { return m_id; }
  ProtocolKind Protocol () const { return m_protocol; }
  bool Secure () const { return m_protocol == ProtocolKind::SdAodv; }
  void SetBehavior (std::unique_ptr<Behavior> b) { m_behavior = std::move (b); }
  const Behavior *GetBehavior () const { return m_behavior.get (); }

  /// Frame delivered by the medium.
  void Receive (const Frame &frame);
  /// Frame handed over a wormhole tunnel.
  void ReceiveTunneled (const RreqPacket &rreq);
  /// The medium could not deliver a unicast we sent.
  void LinkFailure (const Frame &frame);

  SendResult SendData (DataPacket pkt);

  /// Returns false if a discovery for `dest` is already pending.
  bool OriginateRouteDiscovery (NodeId dest, std::vector<NodeId> excluded = {});
  RreqAction HandleRreq (RreqPacket rreq, NodeId prevHop);
  RrepAction HandleRrep (RrepPacket rrep, NodeId prevHop);
  DataAction HandleData (DataPacket data, NodeId prevHop);
  /// Returns the number of routes invalidated.
  size_t HandleRerr (const RerrPacket &rerr, NodeId prevHop);
  void HandleProbe (const ProbePacket &probe, NodeId prevHop);

  /// False iff the SD-AODV suspect list contains `other`.
  bool IsSuspect (NodeId other) const { return m_suspects.Contains (other); }

  // State, exposed for adversary behaviours, the world and tests.
  RoutingTable &Routes () { return m_routes; }
  const RoutingTable &Routes () const { return m_routes; }
  SeenRreqCache &Seen () { return m_seen; }
  SuspectList &Suspects () { return m_suspects; }
  const SuspectList &Suspects () const { return m_suspects; }
  NextHopShadow &Shadow () { return m_shadow; }
  const NextHopShadow &Shadow () const { return m_shadow; }
  const AgentCounters &Counters () const { return m_counters; }
  const AodvConfig &Config () const { return m_cfg; }
  uint32_t OwnSeq () const { return m_ownSeq; }
  uint32_t LastBcastId () const { return m_bcastId; }
  bool DiscoveryPending (NodeId dest) const { return m_discoveries.contains (dest); }
  size_t BufferedCount (NodeId dest) const;
  size_t BufferedTotal () const;
  NodeEnv &Env () { return m_env; }
  Simulator &Sim () { return m_env.Sim (); }

  // Primitives used by the state machine and by behaviours.
  void BroadcastRreq (RreqPacket rreq, bool jitter);
  void Unicast (NodeId to, Packet p);
  void RecordFlag (NodeId suspect, AttackKind kind);
  RreqPacket ForwardedCopy (const RreqPacket &in) const;
  /// Tell `to` that this node has no route to `dest`, as the no-route data path does.
  void ReportUnreachable (NodeId dest, NodeId to);

private:
  struct Discovery
  {
    uint32_t retries = 0;
    EventId timer;
    std::vector<NodeId> excluded;
  };

  struct PendingVerification
  {
    RrepPacket rrep;
    NodeId prevHop = 0;
    EventId timer;
  };

  void SendViaRoute (DataPacket pkt, const RouteEntry &route);
  void Buffer (DataPacket pkt);
  void FlushBuffer (NodeId dest);
  void DropBuffer (NodeId dest, DropReason why);
  void DiscoveryTimeout (NodeId dest);
  void SendRreq (NodeId dest, const std::vector<NodeId> &excluded);
  bool InstallRoute (NodeId dest, uint32_t seq, NodeId nextHop, uint8_t hops);
  void SendRerr (std::vector<UnreachableDest> dests, std::set<NodeId> targets);
  RrepAction ContinueRrep (RrepPacket rrep, NodeId prevHop);
  void StartVerification (const RrepPacket &rrep, NodeId prevHop);
  void FinishVerification (uint16_t probeId, bool confirmed);
  void AbandonVerification (uint16_t probeId);
  void HandleLoopedData (DataPacket data, NodeId prevHop);
  std::vector<NodeId> ExclusionFor (const std::vector<NodeId> &incoming) const;

  NodeId m_id;
  NodeEnv &m_env;
  ProtocolKind m_protocol;
  AodvConfig m_cfg;
  SdAodvConfig m_sdCfg;
  RngStream m_jitter;
  std::unique_ptr<Behavior> m_behavior;

  uint32_t m_ownSeq = 0;
  uint32_t m_bcastId = 0;
  RoutingTable m_routes;
  SeenRreqCache m_seen;
  std::map<NodeId, std::deque<DataPacket>> m_buffers;
  std::map<NodeId, Discovery> m_discoveries;

  SuspectList m_suspects;
  NextHopShadow m_shadow;
  uint16_t m_nextProbeId = 1;
  std::map<uint16_t, PendingVerification> m_verifications;

  AgentCounters m_counters;
};

} // namespace manet

#endif
