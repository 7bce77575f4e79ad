#include "manet/scenario.h"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace manet {

using nlohmann::json;

size_t
Levenshtein (std::string_view a, std::string_view b)
{
  std::vector<size_t> prev (b.size () + 1), cur (b.size () + 1);
  for (size_t j = 0; j <= b.size (); ++j)
    {
      prev[j] = j;
    }
  for (size_t i = 1; i <= a.size (); ++i)
    {
      cur[0] = i;
      for (size_t j = 1; j <= b.size (); ++j)
        {
          size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
          cur[j] = std::min ({prev[j] + 1, cur[j - 1] + 1, sub});
        }
      std::swap (prev, cur);
    }
  return prev[b.size ()];
}

namespace {

std::string
Join (const std::string &path, std::string_view key)
{
  return path.empty () ? std::string (key) : path + "." + std::string (key);
}

/// Reads the keys of one JSON object and complains about the ones nobody asked for.
class Section
{
public:
  Section (const json &j, std::string path) : m_json (j), m_path (std::move (path))
  {
    if (!j.is_object ())
      {
        throw ConfigError (m_path, "expected an object");
      }
  }

  const json *Take (std::string_view key)
  {
    m_known.emplace_back (key);
    auto it = m_json.find (std::string (key));
    return it == m_json.end () ? nullptr : &*it;
  }

  std::string PathOf (std::string_view key) const { return Join (m_path, key); }

  void Number (std::string_view key, double &dst)
  {
    if (const json *v = Take (key))
      {
        if (!v->is_number ())
          {
            throw ConfigError (PathOf (key), "expected a number");
          }
        dst = v->get<double> ();
      }
  }

  template <typename T>
  void Integer (std::string_view key, T &dst)
  {
    if (const json *v = Take (key))
      {
        if (!v->is_number_unsigned ())
          {
            throw ConfigError (PathOf (key), "expected a non-negative integer");
          }
        uint64_t raw = v->get<uint64_t> ();
        if (raw > std::numeric_limits<T>::max ())
          {
            throw ConfigError (PathOf (key), "value too large");
          }
        dst = static_cast<T> (raw);
      }
  }

  void Seconds (std::string_view key, SimTime &dst)
  {
    double s = dst.GetSeconds ();
    Number (key, s);
    if (s < 0.0)
      {
        throw ConfigError (PathOf (key), "must be >= 0");
      }
    dst = SimTime::Seconds (s);
  }

  void Boolean (std::string_view key, bool &dst)
  {
    if (const json *v = Take (key))
      {
        if (!v->is_boolean ())
          {
            throw ConfigError (PathOf (key), "expected true or false");
          }
        dst = v->get<bool> ();
      }
  }

  bool String (std::string_view key, std::string &dst)
  {
    if (const json *v = Take (key))
      {
        if (!v->is_string ())
          {
            throw ConfigError (PathOf (key), "expected a string");
          }
        dst = v->get<std::string> ();
        return true;
      }
    return false;
  }

  void Finish () const
  {
    for (const auto &[key, value] : m_json.items ())
      {
        if (std::find (m_known.begin (), m_known.end (), key) != m_known.end ())
          {
            continue;
          }
        std::string msg = "unknown key";
        std::string best;
        size_t bestDist = 3;
        for (const auto &k : m_known)
          {
            size_t d = Levenshtein (key, k);
            if (d < bestDist)
              {
                bestDist = d;
                best = k;
              }
          }
        if (!best.empty ())
          {
            msg += "; did you mean '" + best + "'?";
          }
        throw ConfigError (PathOf (key), msg);
      }
  }

private:
  const json &m_json;
  std::string m_path;
  std::vector<std::string> m_known;
};

NodeId
ReadId (const json &v, const std::string &path)
{
  if (!v.is_number_unsigned ())
    {
      throw ConfigError (path, "expected a node id");
    }
  return v.get<NodeId> ();
}

std::vector<std::pair<NodeId, NodeId>>
ReadPairs (const json &v, const std::string &path)
{
  if (!v.is_array ())
    {
      throw ConfigError (path, "expected a list of [a, b] pairs");
    }
  std::vector<std::pair<NodeId, NodeId>> out;
  for (size_t i = 0; i < v.size (); ++i)
    {
      std::string p = path + "[" + std::to_string (i) + "]";
      if (!v[i].is_array () || v[i].size () != 2)
        {
          throw ConfigError (p, "expected [a, b]");
        }
      out.emplace_back (ReadId (v[i][0], p), ReadId (v[i][1], p));
    }
  return out;
}

void
ParseMobility (Section &s, MobilityConfig &m)
{
  std::string model;
  if (s.String ("model", model))
    {
      if (model == "waypoint")
        m.model = MobilityModel::Waypoint;
      else if (model == "static")
        m.model = MobilityModel::Static;
      else
        throw ConfigError (s.PathOf ("model"), "expected \"waypoint\" or \"static\"");
    }
  s.Number ("speed_min", m.speeds.min);
  s.Number ("speed_max", m.speeds.max);
  s.Number ("tick", m.tick);
}

void
ParseTraffic (Section &s, TrafficConfig &t)
{
  s.Integer ("flows", t.flows);
  s.Integer ("packet_size", t.packetSize);
  s.Number ("rate", t.rate);
  s.Number ("start", t.start);
  s.Number ("stop", t.stop);
  if (const json *v = s.Take ("explicit"))
    {
      t.explicitFlows = ReadPairs (*v, s.PathOf ("explicit"));
    }
}

void
ParseMedium (Section &s, MediumConfig &m)
{
  s.Number ("bandwidth", m.bandwidthBps);
  s.Number ("range", m.rangeM);
  s.Number ("mac_overhead", m.macOverheadS);
  std::string mode;
  if (s.String ("collision_mode", mode))
    {
      if (mode == "ideal")
        m.collisionMode = CollisionMode::Ideal;
      else if (mode == "slotted-loss")
        m.collisionMode = CollisionMode::SlottedLoss;
      else
        throw ConfigError (s.PathOf ("collision_mode"), "expected \"ideal\" or \"slotted-loss\"");
    }
  s.Number ("loss_probability", m.lossProbability);
  s.Integer ("queue_limit", m.queueLimit);
  s.Boolean ("carrier_sense", m.carrierSense);
  s.Integer ("mac_retries", m.macRetries);
  s.Seconds ("max_queue_delay", m.maxQueueDelay);
}

void
ParseAttack (Section &s, AttackProfile &a)
{
  std::string kind;
  if (s.String ("kind", kind))
    {
      auto k = manet::ParseAttack (kind);
      if (!k)
        {
          throw ConfigError (s.PathOf ("kind"), "expected none, wormhole, byzantine or blackhole");
        }
      a.kind = *k;
    }
  s.Number ("malicious_fraction", a.maliciousFraction);
  s.Integer ("seq_inflation", a.seqInflation);
  s.Boolean ("tunnel_enabled", a.tunnelEnabled);
  s.Boolean ("blackhole_rerr", a.blackholeRerr);
  std::string decoy;
  if (s.String ("decoy", decoy))
    {
      if (decoy == "partner")
        a.decoy = DecoyMode::Partner;
      else if (decoy == "random-honest")
        a.decoy = DecoyMode::RandomHonest;
      else
        throw ConfigError (s.PathOf ("decoy"), "expected \"partner\" or \"random-honest\"");
    }
  if (const json *v = s.Take ("explicit_nodes"))
    {
      if (!v->is_array ())
        {
          throw ConfigError (s.PathOf ("explicit_nodes"), "expected a list of node ids");
        }
      a.explicitNodes.clear ();
      for (size_t i = 0; i < v->size (); ++i)
        {
          a.explicitNodes.push_back (ReadId ((*v)[i], s.PathOf ("explicit_nodes") + "[" + std::to_string (i) + "]"));
        }
    }
  if (const json *v = s.Take ("tunnel_pairs"))
    {
      a.tunnelPairs = ReadPairs (*v, s.PathOf ("tunnel_pairs"));
    }
}

void
ParseAodv (Section &s, AodvConfig &c)
{
  s.Seconds ("route_lifetime", c.routeLifetime);
  s.Seconds ("seen_rreq_lifetime", c.seenRreqLifetime);
  s.Integer ("initial_ttl", c.initialTtl);
  s.Seconds ("discovery_timeout", c.discoveryTimeout);
  s.Integer ("discovery_retries", c.discoveryRetries);
  s.Integer ("buffer_limit", c.bufferLimit);
  s.Integer ("data_hop_budget", c.dataHopBudget);
  s.Seconds ("broadcast_jitter", c.broadcastJitter);
}

void
ParseSdAodv (Section &s, SdAodvConfig &c)
{
  s.Seconds ("probe_timeout", c.probeTimeout);
  std::string hash;
  if (s.String ("hash", hash))
    {
      if (hash != "sha1")
        {
          throw ConfigError (s.PathOf ("hash"), "only \"sha1\" is supported");
        }
    }
}

template <typename Fn>
void
Nested (Section &parent, std::string_view key, Fn fn)
{
  if (const json *v = parent.Take (key))
    {
      Section s (*v, parent.PathOf (key));
      fn (s);
      s.Finish ();
    }
}

std::string
Num (double x)
{
  char buf[64];
  auto res = std::to_chars (buf, buf + sizeof buf, x);
  return std::string (buf, res.ptr);
}

std::string
Secs (SimTime t)
{
  return Num (t.GetSeconds ());
}

std::string
PairList (const std::vector<std::pair<NodeId, NodeId>> &pairs)
{
  std::string out = "[";
  for (size_t i = 0; i < pairs.size (); ++i)
    {
      out += (i ? ";" : "") + std::to_string (pairs[i].first) + "-" + std::to_string (pairs[i].second);
    }
  return out + "]";
}

} // namespace

void
ValidateScenario (const ScenarioConfig &c)
{
  auto require = [] (bool ok, const char *path, const char *msg) {
    if (!ok)
      {
        throw ConfigError (path, msg);
      }
  };
  require (c.terrain.width > 0.0, "terrain.width", "must be > 0");
  require (c.terrain.height > 0.0, "terrain.height", "must be > 0");
  require (c.nodeCount >= 1, "node_count", "must be >= 1");
  require (c.simDuration >= 0.0, "sim_duration", "must be >= 0");
  if (c.placement == PlacementKind::Explicit)
    {
      require (c.positions.size () == c.nodeCount, "positions", "explicit placement needs node_count positions");
      for (const auto &p : c.positions)
        {
          require (c.terrain.Contains (p.x, p.y), "positions", "position outside the terrain");
        }
    }
  require (c.mobility.speeds.min > 0.0, "mobility.speed_min", "must be > 0");
  require (c.mobility.speeds.max >= c.mobility.speeds.min, "mobility.speed_max", "must be >= speed_min");
  require (c.mobility.tick > 0.0, "mobility.tick", "must be > 0");
  require (c.traffic.packetSize >= 1, "traffic.packet_size", "must be >= 1");
  require (c.traffic.rate > 0.0, "traffic.rate", "must be > 0");
  require (c.traffic.start >= 0.0, "traffic.start", "must be >= 0");
  for (const auto &[s, d] : c.traffic.explicitFlows)
    {
      require (s < c.nodeCount && d < c.nodeCount, "traffic.explicit", "node id out of range");
      require (s != d, "traffic.explicit", "source and destination must differ");
    }
  if (c.traffic.explicitFlows.empty () && c.traffic.flows > 0)
    {
      uint64_t pairs = static_cast<uint64_t> (c.nodeCount) * (c.nodeCount - 1);
      require (pairs >= c.traffic.flows, "traffic.flows", "more flows than distinct node pairs");
    }
  require (c.medium.bandwidthBps > 0.0, "medium.bandwidth", "must be > 0");
  require (c.medium.rangeM > 0.0, "medium.range", "must be > 0");
  require (c.medium.macOverheadS >= 0.0, "medium.mac_overhead", "must be >= 0");
  require (c.medium.lossProbability >= 0.0 && c.medium.lossProbability <= 1.0, "medium.loss_probability",
           "must be in [0, 1]");
  require (c.medium.queueLimit >= 1, "medium.queue_limit", "must be >= 1");
  require (c.medium.maxQueueDelay.GetMicros () >= 0, "medium.max_queue_delay", "must be >= 0");
  require (c.attack.maliciousFraction >= 0.0 && c.attack.maliciousFraction < 100.0, "attack.malicious_fraction",
           "must be in [0, 100)");
  for (NodeId n : c.attack.explicitNodes)
    {
      require (n < c.nodeCount, "attack.explicit_nodes", "node id out of range");
    }
  for (const auto &[a, b] : c.attack.tunnelPairs)
    {
      require (a < c.nodeCount && b < c.nodeCount, "attack.tunnel_pairs", "node id out of range");
    }
  require (c.aodv.routeLifetime.GetMicros () > 0, "aodv.route_lifetime", "must be > 0");
  require (c.aodv.seenRreqLifetime.GetMicros () > 0, "aodv.seen_rreq_lifetime", "must be > 0");
  require (c.aodv.initialTtl >= 1, "aodv.initial_ttl", "must be >= 1");
  require (c.aodv.discoveryTimeout.GetMicros () > 0, "aodv.discovery_timeout", "must be > 0");
  require (c.aodv.bufferLimit >= 1, "aodv.buffer_limit", "must be >= 1");
  require (c.aodv.dataHopBudget >= 1, "aodv.data_hop_budget", "must be >= 1");
  require (c.sdaodv.probeTimeout.GetMicros () > 0, "sdaodv.probe_timeout", "must be > 0");
}

ScenarioConfig
ParseScenario (const std::string &jsonText)
{
  json root;
  try
    {
      root = json::parse (jsonText);
    }
  catch (const json::parse_error &e)
    {
      throw ConfigError ("", std::string ("invalid JSON: ") + e.what ());
    }
  ScenarioConfig c;
  Section top (root, "");
  Nested (top, "terrain", [&] (Section &s) {
    s.Number ("width", c.terrain.width);
    s.Number ("height", c.terrain.height);
  });
  top.Integer ("node_count", c.nodeCount);
  top.Number ("sim_duration", c.simDuration);
  std::string placement;
  if (top.String ("placement", placement))
    {
      if (placement == "uniform")
        c.placement = PlacementKind::Uniform;
      else if (placement == "explicit")
        c.placement = PlacementKind::Explicit;
      else
        throw ConfigError ("placement", "expected \"uniform\" or \"explicit\"");
    }
  if (const json *v = top.Take ("positions"))
    {
      if (!v->is_array ())
        {
          throw ConfigError ("positions", "expected a list of [x, y]");
        }
      for (size_t i = 0; i < v->size (); ++i)
        {
          const json &p = (*v)[i];
          if (!p.is_array () || p.size () != 2 || !p[0].is_number () || !p[1].is_number ())
            {
              throw ConfigError ("positions[" + std::to_string (i) + "]", "expected [x, y]");
            }
          c.positions.push_back (Vec2{p[0].get<double> (), p[1].get<double> ()});
        }
    }
  top.Integer ("seed", c.seed);
  Nested (top, "mobility", [&] (Section &s) { ParseMobility (s, c.mobility); });
  Nested (top, "traffic", [&] (Section &s) { ParseTraffic (s, c.traffic); });
  Nested (top, "medium", [&] (Section &s) { ParseMedium (s, c.medium); });
  std::string protocol;
  if (top.String ("protocol", protocol))
    {
      auto p = ParseProtocol (protocol);
      if (!p)
        {
          throw ConfigError ("protocol", "expected \"aodv\" or \"sdaodv\"");
        }
      c.protocol = *p;
    }
  Nested (top, "attack", [&] (Section &s) { ParseAttack (s, c.attack); });
  Nested (top, "aodv", [&] (Section &s) { ParseAodv (s, c.aodv); });
  Nested (top, "sdaodv", [&] (Section &s) { ParseSdAodv (s, c.sdaodv); });
  top.Finish ();
  ValidateScenario (c);
  return c;
}

ScenarioConfig
LoadScenario (const std::string &path)
{
  std::ifstream f (path, std::ios::binary);
  if (!f)
    {
      throw ConfigError ("", "cannot read config file " + path);
    }
  std::ostringstream text;
  text << f.rdbuf ();
  return ParseScenario (text.str ());
}

ConfigEcho
EchoConfig (const ScenarioConfig &c)
{
  ConfigEcho e;
  auto put = [&] (std::string key, std::string value) { e.emplace_back (std::move (key), std::move (value)); };
  put ("terrain.width", Num (c.terrain.width));
  put ("terrain.height", Num (c.terrain.height));
  put ("node_count", std::to_string (c.nodeCount));
  put ("sim_duration", Num (c.simDuration));
  put ("placement", c.placement == PlacementKind::Uniform ? "uniform" : "explicit");
  std::string pos = "[";
  for (size_t i = 0; i < c.positions.size (); ++i)
    {
      pos += (i ? ";" : "") + Num (c.positions[i].x) + "," + Num (c.positions[i].y);
    }
  put ("positions", pos + "]");
  put ("seed", std::to_string (c.seed));
  put ("rng.algorithm", std::string (RngStream::kAlgorithm));
  put ("mobility.model", c.mobility.model == MobilityModel::Waypoint ? "waypoint" : "static");
  put ("mobility.speed_min", Num (c.mobility.speeds.min));
  put ("mobility.speed_max", Num (c.mobility.speeds.max));
  put ("mobility.pause", "0");
  put ("mobility.tick", Num (c.mobility.tick));
  put ("traffic.model", "cbr");
  put ("traffic.flows", std::to_string (c.traffic.flows));
  put ("traffic.packet_size", std::to_string (c.traffic.packetSize));
  put ("traffic.rate", Num (c.traffic.rate));
  put ("traffic.start", Num (c.traffic.start));
  put ("traffic.stop", Num (c.traffic.stop));
  put ("traffic.explicit", PairList (c.traffic.explicitFlows));
  put ("medium.bandwidth", Num (c.medium.bandwidthBps));
  put ("medium.range", Num (c.medium.rangeM));
  put ("medium.mac_overhead", Num (c.medium.macOverheadS));
  put ("medium.collision_mode", c.medium.collisionMode == CollisionMode::Ideal ? "ideal" : "slotted-loss");
  put ("medium.loss_probability", Num (c.medium.lossProbability));
  put ("medium.queue_limit", std::to_string (c.medium.queueLimit));
  put ("medium.carrier_sense", c.medium.carrierSense ? "true" : "false");
  put ("medium.mac_retries", std::to_string (c.medium.macRetries));
  put ("medium.max_queue_delay", Secs (c.medium.maxQueueDelay));
  put ("protocol", std::string (ToString (c.protocol)));
  put ("attack.kind", std::string (ToString (c.attack.kind)));
  put ("attack.malicious_fraction", Num (c.attack.maliciousFraction));
  put ("attack.seq_inflation", std::to_string (c.attack.seqInflation));
  put ("attack.tunnel_enabled", c.attack.tunnelEnabled ? "true" : "false");
  put ("attack.blackhole_rerr", c.attack.blackholeRerr ? "true" : "false");
  put ("attack.decoy", c.attack.decoy == DecoyMode::Partner ? "partner" : "random-honest");
  std::string nodes = "[";
  for (size_t i = 0; i < c.attack.explicitNodes.size (); ++i)
    {
      nodes += (i ? ";" : "") + std::to_string (c.attack.explicitNodes[i]);
    }
  put ("attack.explicit_nodes", nodes + "]");
  put ("attack.tunnel_pairs", PairList (c.attack.tunnelPairs));
  put ("aodv.route_lifetime", Secs (c.aodv.routeLifetime));
  put ("aodv.seen_rreq_lifetime", Secs (c.aodv.seenRreqLifetime));
  put ("aodv.initial_ttl", std::to_string (c.aodv.initialTtl));
  put ("aodv.discovery_timeout", Secs (c.aodv.discoveryTimeout));
  put ("aodv.discovery_retries", std::to_string (c.aodv.discoveryRetries));
  put ("aodv.buffer_limit", std::to_string (c.aodv.bufferLimit));
  put ("aodv.data_hop_budget", std::to_string (c.aodv.dataHopBudget));
  put ("aodv.broadcast_jitter", Secs (c.aodv.broadcastJitter));
  put ("sdaodv.probe_timeout", Secs (c.sdaodv.probeTimeout));
  put ("sdaodv.hash", std::string (c.sdaodv.hash));
  return e;
}

std::string
DumpScenario (const ScenarioConfig &c)
{
  json j;
  j["terrain"] = {{"width", c.terrain.width}, {"height", c.terrain.height}};
  j["node_count"] = c.nodeCount;
  j["sim_duration"] = c.simDuration;
  j["placement"] = c.placement == PlacementKind::Uniform ? "uniform" : "explicit";
  if (!c.positions.empty ())
    {
      json pos = json::array ();
      for (const auto &p : c.positions)
        {
          pos.push_back ({p.x, p.y});
        }
      j["positions"] = pos;
    }
  j["seed"] = c.seed;
  j["mobility"] = {{"model", c.mobility.model == MobilityModel::Waypoint ? "waypoint" : "static"},
                   {"speed_min", c.mobility.speeds.min},
                   {"speed_max", c.mobility.speeds.max},
                   {"tick", c.mobility.tick}};
  json flows = json::array ();
  for (const auto &[s, d] : c.traffic.explicitFlows)
    {
      flows.push_back ({s, d});
    }
  j["traffic"] = {{"flows", c.traffic.flows},   {"packet_size", c.traffic.packetSize},
                  {"rate", c.traffic.rate},     {"start", c.traffic.start},
                  {"stop", c.traffic.stop},     {"explicit", flows}};
  j["medium"] = {{"bandwidth", c.medium.bandwidthBps},
                 {"range", c.medium.rangeM},
                 {"mac_overhead", c.medium.macOverheadS},
                 {"collision_mode", c.medium.collisionMode == CollisionMode::Ideal ? "ideal" : "slotted-loss"},
                 {"loss_probability", c.medium.lossProbability},
                 {"queue_limit", c.medium.queueLimit},
                 {"carrier_sense", c.medium.carrierSense},
                 {"mac_retries", c.medium.macRetries},
                 {"max_queue_delay", c.medium.maxQueueDelay.GetSeconds ()}};
  j["protocol"] = std::string (ToString (c.protocol));
  json pairs = json::array ();
  for (const auto &[a, b] : c.attack.tunnelPairs)
    {
      pairs.push_back ({a, b});
    }
  j["attack"] = {{"kind", std::string (ToString (c.attack.kind))},
                 {"malicious_fraction", c.attack.maliciousFraction},
                 {"seq_inflation", c.attack.seqInflation},
                 {"tunnel_enabled", c.attack.tunnelEnabled},
                 {"blackhole_rerr", c.attack.blackholeRerr},
                 {"decoy", c.attack.decoy == DecoyMode::Partner ? "partner" : "random-honest"},
                 {"explicit_nodes", c.attack.explicitNodes},
                 {"tunnel_pairs", pairs}};
  j["aodv"] = {{"route_lifetime", c.aodv.routeLifetime.GetSeconds ()},
               {"seen_rreq_lifetime", c.aodv.seenRreqLifetime.GetSeconds ()},
               {"initial_ttl", c.aodv.initialTtl},
               {"discovery_timeout", c.aodv.discoveryTimeout.GetSeconds ()},
               {"discovery_retries", c.aodv.discoveryRetries},
               {"buffer_limit", c.aodv.bufferLimit},
               {"data_hop_budget", c.aodv.dataHopBudget},
               {"broadcast_jitter", c.aodv.broadcastJitter.GetSeconds ()}};
  j["sdaodv"] = {{"probe_timeout", c.sdaodv.probeTimeout.GetSeconds ()}, {"hash", std::string (c.sdaodv.hash)}};
  return j.dump (2);
}

} // namespace manet
