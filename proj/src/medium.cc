#include "manet/medium.h"

#include <cmath>

namespace manet {

SimTime
TransmissionTime (uint32_t sizeBytes, const MediumConfig &cfg)
{
  double airtime = static_cast<double> (sizeBytes) * 8.0 / cfg.bandwidthBps;
  return SimTime::Seconds (airtime + cfg.macOverheadS);
}

Medium::Medium (Simulator &sim, MediumConfig cfg, RngStream lossRng, const std::vector<NodePosition> &positions)
  : m_sim (sim),
    m_cfg (cfg),
    m_lossRng (std::move (lossRng)),
    m_positions (positions),
    m_ifaces (positions.size ())
{
}

Medium::Interface &
Medium::Iface (NodeId n)
{
  return m_ifaces.at (n);
}

size_t
Medium::QueueLength (NodeId node) const
{
  return m_ifaces.at (node).queue.size ();
}

void
Medium::SetPromiscuous (NodeId node, bool enable)
{
  Iface (node).promiscuous = enable;
}

void
Medium::Transmit (NodeId src, NodeId linkDst, Packet payload)
{
  auto frame = std::make_shared<Frame> ();
  frame->src = src;
  frame->linkDst = linkDst;
  frame->sizeBytes = FrameSize (payload);
  frame->enqueued = m_sim.Now ();
  frame->payload = std::move (payload);

  Interface &ifc = Iface (src);
  if (ifc.queue.size () >= m_cfg.queueLimit)
    {
      ++m_counters.droppedQueueFull;
      if (m_handlers.queueDrop)
        {
          m_handlers.queueDrop (*frame);
        }
      return;
    }
  ifc.queue.push_back (std::move (frame));
  if (!ifc.busy)
    {
      StartNext (src);
    }
}

SimTime
Medium::ChannelFreeAt (NodeId n) const
{
  SimTime now = m_sim.Now ();
  SimTime freeAt = now;
  const Vec2 at = m_positions[n].pos;
  for (const auto &p : m_positions)
    {
      const Interface &other = m_ifaces[p.id];
      if (p.id != n && other.onAirUntil > freeAt && InRange (at, p.pos, m_cfg.rangeM))
        {
          freeAt = other.onAirUntil;
        }
    }
  return freeAt;
}

void
Medium::StartNext (NodeId n)
{
  Interface &ifc = Iface (n);
  ifc.busy = true;
  if (m_cfg.carrierSense && !ifc.queue.empty ())
    {
      SimTime freeAt = ChannelFreeAt (n);
      if (freeAt > m_sim.Now ())
        {
          ++m_counters.deferrals;
          m_sim.Schedule (freeAt, [this, n] { StartNext (n); });
          return;
        }
    }
  while (!ifc.queue.empty ())
    {
      FramePtr frame = std::move (ifc.queue.front ());
      ifc.queue.pop_front ();
      if (m_cfg.maxQueueDelay.GetMicros () > 0 && m_sim.Now () - frame->enqueued > m_cfg.maxQueueDelay)
        {
          ++m_counters.droppedStale;
          if (m_handlers.queueDrop)
            {
              m_handlers.queueDrop (*frame);
            }
          continue;
        }
      ++m_counters.transmissions;
      const Vec2 from = m_positions[n].pos;
      SimTime arrive = m_sim.Now () + TransmissionTime (frame->sizeBytes, m_cfg);

      auto lost = [&] {
        return m_cfg.collisionMode == CollisionMode::SlottedLoss && m_lossRng.Bernoulli (m_cfg.lossProbability);
      };
      auto deliverTo = [&] (NodeId rx) {
        ++m_counters.deliveryAttempts;
        if (lost ())
          {
            ++m_counters.droppedLoss;
            return;
          }
        m_sim.Schedule (arrive, [this, rx, frame] {
          ++m_counters.delivered;
          if (m_handlers.deliver)
            {
              m_handlers.deliver (rx, *frame);
            }
        });
      };

      if (frame->linkDst == kBroadcast)
        {
          for (const auto &p : m_positions)
            {
              if (p.id != n && InRange (from, p.pos, m_cfg.rangeM))
                {
                  deliverTo (p.id);
                }
            }
        }
      else
        {
          if (!Exists (frame->linkDst) || !InRange (from, m_positions[frame->linkDst].pos, m_cfg.rangeM))
            {
              ++m_counters.deliveryAttempts;
              ++m_counters.droppedOutOfRange;
              if (m_handlers.linkFailure)
                {
                  m_handlers.linkFailure (*frame);
                }
              continue; // a failed unicast does not hold the transmitter
            }
          // Each lost attempt holds the channel for another airtime.
          SimTime airtime = arrive - m_sim.Now ();
          uint32_t attempt = 0;
          while (attempt < m_cfg.macRetries && lost ())
            {
              ++attempt;
              ++m_counters.retries;
              arrive = arrive + airtime;
            }
          ++m_counters.deliveryAttempts;
          if (attempt == m_cfg.macRetries && lost ())
            {
              ++m_counters.droppedLoss;
              m_sim.Schedule (arrive, [this, frame] {
                if (m_handlers.linkFailure)
                  {
                    m_handlers.linkFailure (*frame);
                  }
              });
            }
          else
            {
              m_sim.Schedule (arrive, [this, rx = frame->linkDst, frame] {
                ++m_counters.delivered;
                if (m_handlers.deliver)
                  {
                    m_handlers.deliver (rx, *frame);
                  }
              });
            }
          for (const auto &p : m_positions)
            {
              if (p.id != n && p.id != frame->linkDst && m_ifaces[p.id].promiscuous &&
                  InRange (from, p.pos, m_cfg.rangeM))
                {
                  NodeId rx = p.id;
                  m_sim.Schedule (arrive, [this, rx, frame] {
                    ++m_counters.tapped;
                    if (m_handlers.tap)
                      {
                        m_handlers.tap (rx, *frame);
                      }
                  });
                }
            }
        }

      ifc.onAirUntil = arrive;
      m_sim.Schedule (arrive, [this, n] { StartNext (n); });
      return;
    }
  ifc.busy = false;
}

} // namespace manet
