#include "vanet/config.hpp"

#include <functional>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace vanet {

namespace {

std::string
trim(const std::string& s)
{
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string>
splitList(const std::string& s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (auto t = trim(item); !t.empty())
      out.push_back(t);
  return out;
}

double
number(const std::string& key, const std::string& v)
{
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw DomainError(key + ": not a number: '" + v + "'");
  return d;
}

std::uint64_t
count(const std::string& key, const std::string& v)
{
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    if (!v.empty() && v[0] != '-')
      n = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw DomainError(key + ": not a non-negative integer: '" + v + "'");
  return n;
}

SimTime
seconds(const std::string& key, const std::string& v)
{
  return fromSeconds(number(key, v));
}

SimTime
millis(const std::string& key, const std::string& v)
{
  return fromSeconds(number(key, v) / 1000.0);
}

std::vector<std::size_t>
counts(const std::string& key, const std::string& v)
{
  std::vector<std::size_t> out;
  for (const auto& item : splitList(v))
    out.push_back(count(key, item));
  if (out.empty())
    throw DomainError(key + ": empty list");
  return out;
}

using Setter = std::function<void(SweepConfig&, const std::string&, const std::string&)>;

struct Registry
{
  std::map<std::string, Setter> setters;

  Registry()
  {
    auto& s = setters;
    s["nodes"] = [](SweepConfig& c, auto& k, auto& v) { c.nodes = counts(k, v); };
    s["sessions"] = [](SweepConfig& c, auto& k, auto& v) { c.sessions = counts(k, v); };
    s["seed"] = [](SweepConfig& c, auto& k, auto& v) { c.firstSeed = count(k, v); };
    s["seeds"] = [](SweepConfig& c, auto& k, auto& v) { c.seeds = count(k, v); };
    s["duration"] = [](SweepConfig& c, auto& k, auto& v) { c.base.duration = number(k, v); };
    s["grid"] = [](SweepConfig& c, auto&, auto& v) { c.base.grid = parseGrid(v); };
    s["fading"] = [](SweepConfig& c, auto&, auto& v) { parseFading(v, c.base.channel); };
    s["workers"] = [](SweepConfig& c, auto& k, auto& v) {
      c.workers = static_cast<unsigned>(count(k, v));
    };
    s["out_dir"] = [](SweepConfig& c, auto&, auto& v) { c.outDir = v; };
    s["range"] = [](SweepConfig& c, auto& k, auto& v) { c.base.channel.range = number(k, v); };
    s["nakagami_m"] = [](SweepConfig& c, auto& k, auto& v) {
      c.base.channel.nakagamiM = number(k, v);
    };
    s["threshold_ratio"] = [](SweepConfig& c, auto& k, auto& v) {
      c.base.channel.thresholdRatio = number(k, v);
    };
    s["hop_latency_ms"] = [](SweepConfig& c, auto& k, auto& v) {
      c.base.channel.hopLatency = millis(k, v);
    };
    s["max_jitter_ms"] = [](SweepConfig& c, auto& k, auto& v) {
      c.base.channel.maxJitter = millis(k, v);
    };
    s["speed_mps"] = [](SweepConfig& c, auto& k, auto& v) { c.base.speed = number(k, v); };
    s["sample_interval"] = [](SweepConfig& c, auto& k, auto& v) {
      c.base.sampleInterval = number(k, v);
    };
    s["cbr_rate"] = [](SweepConfig& c, auto& k, auto& v) { c.base.traffic.rate = number(k, v); };
    s["packet_size"] = [](SweepConfig& c, auto& k, auto& v) {
      c.base.traffic.packetSize = static_cast<std::uint32_t>(count(k, v));
    };
    s["traffic_start"] = [](SweepConfig& c, auto& k, auto& v) {
      c.base.traffic.start = seconds(k, v);
    };
    s["session_stagger"] = [](SweepConfig& c, auto& k, auto& v) {
      c.base.traffic.stagger = seconds(k, v);
    };
    s["data_ttl"] = [](SweepConfig& c, auto& k, auto& v) {
      c.base.traffic.ttl = static_cast<std::uint32_t>(count(k, v));
    };

    s["dsdv.periodic_full_dump_interval"] = [](SweepConfig& c, auto& k, auto& v) {
      c.params.dsdv.fullDumpInterval = seconds(k, v);
    };
    s["dsdv.triggered_update_min_interval"] = [](SweepConfig& c, auto& k, auto& v) {
      c.params.dsdv.triggeredMinInterval = seconds(k, v);
    };
    s["dsdv.settling_time"] = [](SweepConfig& c, auto& k, auto& v) {
      c.params.dsdv.settlingTime = seconds(k, v);
    };

    for (auto [name, field] : {std::pair{"default", &ParameterSet::dymoDefault},
                               std::pair{"mod", &ParameterSet::dymoMod}}) {
      std::string p = std::string("dymo.") + name + ".";
      s[p + "net_diameter"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).netDiameter = static_cast<std::uint32_t>(count(k, v));
      };
      s[p + "rreq_wait_time"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).rreqWaitTime = millis(k, v);
      };
      s[p + "rreq_tries"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).rreqTries = static_cast<std::uint32_t>(count(k, v));
      };
      s[p + "ers_initial_ttl"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).ersInitialTtl = static_cast<std::uint32_t>(count(k, v));
      };
      s[p + "ers_increment"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).ersIncrement = static_cast<std::uint32_t>(count(k, v));
      };
      s[p + "route_lifetime"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).routeLifetime = seconds(k, v);
      };
      s[p + "buffer_capacity"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).bufferCapacity = count(k, v);
      };
    }

    for (auto [name, field] : {std::pair{"default", &ParameterSet::olsrDefault},
                               std::pair{"mod", &ParameterSet::olsrMod}}) {
      std::string p = std::string("olsr.") + name + ".";
      s[p + "hello_interval"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).helloInterval = seconds(k, v);
      };
      s[p + "tc_interval"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).tcInterval = seconds(k, v);
      };
      s[p + "neighbor_hold_time"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).neighborHoldTime = seconds(k, v);
      };
      s[p + "topology_hold_time"] = [field](SweepConfig& c, auto& k, auto& v) {
        (c.params.*field).topologyHoldTime = seconds(k, v);
      };
    }
  }
};

const Registry&
registry()
{
  static const Registry r;
  return r;
}

std::vector<ProtocolKind>
parseProtocols(const std::string& v)
{
  if (v == "all")
    return {ProtocolKind::Dsdv, ProtocolKind::Dymo, ProtocolKind::Olsr};
  std::vector<ProtocolKind> out;
  for (const auto& item : splitList(v)) {
    if (item == "dsdv")
      out.push_back(ProtocolKind::Dsdv);
    else if (item == "dymo")
      out.push_back(ProtocolKind::Dymo);
    else if (item == "olsr")
      out.push_back(ProtocolKind::Olsr);
    else
      throw DomainError("protocol: unknown '" + item + "' (dsdv, dymo, olsr, all)");
  }
  return out;
}

std::vector<Profile>
parseProfiles(const std::string& v)
{
  if (v == "all")
    return {Profile::Default, Profile::Mod};
  std::vector<Profile> out;
  for (const auto& item : splitList(v)) {
    if (item == "default")
      out.push_back(Profile::Default);
    else if (item == "mod")
      out.push_back(Profile::Mod);
    else
      throw DomainError("profile: unknown '" + item + "' (default, mod, all)");
  }
  return out;
}

} // namespace

Settings
parseSettings(std::istream& is)
{
  Settings out;
  std::string line;
  int lineNo = 0;
  while (std::getline(is, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty())
      continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("line " + std::to_string(lineNo) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw DomainError("line " + std::to_string(lineNo) + ": empty key");
    out.emplace_back(key, value);
  }
  return out;
}

void
applySettings(SweepConfig& cfg, const Settings& settings)
{
  std::optional<std::vector<ProtocolKind>> kinds;
  std::optional<std::vector<Profile>> profiles;
  std::set<std::string> explicitKeys;
  for (const auto& [key, value] : settings) {
    if (key == "protocol") {
      kinds = parseProtocols(value);
    } else if (key == "profile") {
      profiles = parseProfiles(value);
    } else {
      auto it = registry().setters.find(key);
      if (it == registry().setters.end())
        throw DomainError("unknown setting '" + key + "'");
      it->second(cfg, key, value);
    }
    explicitKeys.insert(key);
  }

  for (auto [name, field] : {std::pair{"default", &ParameterSet::olsrDefault},
                             std::pair{"mod", &ParameterSet::olsrMod}}) {
    std::string p = std::string("olsr.") + name + ".";
    OlsrParams& o = cfg.params.*field;
    if (!explicitKeys.count(p + "neighbor_hold_time"))
      o.neighborHoldTime = 3 * o.helloInterval;
    if (!explicitKeys.count(p + "topology_hold_time"))
      o.topologyHoldTime = 3 * o.tcInterval;
  }

  if (kinds || profiles) {
    auto k = kinds.value_or(parseProtocols("all"));
    auto p = profiles.value_or(parseProfiles("all"));
    cfg.variants = selectVariants(k, p);
    if (cfg.variants.empty())
      throw DomainError("no protocol variant matches the protocol/profile selection");
  }

  cfg.base.channel.validate();
  cfg.base.traffic.validate();
  cfg.params.dsdv.validate();
  cfg.params.dymoDefault.validate();
  cfg.params.dymoMod.validate();
  cfg.params.olsrDefault.validate();
  cfg.params.olsrMod.validate();
  if (!(cfg.base.duration > 0.0))
    throw DomainError("duration must be positive");
  if (cfg.seeds == 0)
    throw DomainError("seeds must be at least 1");
}

std::vector<std::string>
knownSettingKeys()
{
  std::vector<std::string> out{"protocol", "profile"};
  for (const auto& [k, s] : registry().setters)
    out.push_back(k);
  return out;
}

} // namespace vanet
