#include "vanet/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace vanet {

namespace {

std::vector<std::string>
split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep))
    out.push_back(part);
  return out;
}

double
toNumber(const std::string& s, const std::string& what)
{
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size())
    throw DomainError("bad " + what + ": '" + s + "'");
  return v;
}

} // namespace

GridSpec
parseGrid(const std::string& text)
{
  auto parts = split(text, 'x');
  if (parts.size() != 3)
    throw DomainError("grid must look like RxCxS, got '" + text + "'");
  GridSpec g;
  g.rows = static_cast<int>(toNumber(parts[0], "grid rows"));
  g.cols = static_cast<int>(toNumber(parts[1], "grid cols"));
  g.spacing = toNumber(parts[2], "grid spacing");
  buildGrid(g.rows, g.cols, g.spacing);
  return g;
}

void
parseFading(const std::string& text, ChannelConfig& channel)
{
  if (text == "none") {
    channel.fading = Fading::None;
    return;
  }
  auto parts = split(text, ':');
  if (parts.empty() || parts[0] != "nakagami" || parts.size() > 3)
    throw DomainError("fading must be 'none' or 'nakagami[:M[:Q]]', got '" + text + "'");
  channel.fading = Fading::Nakagami;
  if (parts.size() > 1)
    channel.nakagamiM = toNumber(parts[1], "Nakagami m");
  if (parts.size() > 2)
    channel.thresholdRatio = toNumber(parts[2], "threshold ratio");
  channel.validate();
}

ProtocolSetup
ParameterSet::setup(ProtocolKind kind, Profile profile) const
{
  ProtocolSetup s = ProtocolSetup::make(kind, profile);
  s.dsdv = dsdv;
  s.dymo = profile == Profile::Mod ? dymoMod : dymoDefault;
  s.olsr = profile == Profile::Mod ? olsrMod : olsrDefault;
  return s;
}

std::string
ScenarioConfig::id() const
{
  std::string label = variantLabel(protocol.kind, protocol.profile);
  std::transform(label.begin(), label.end(), label.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s_n%03zu_s%02zu_seed%llu", label.c_str(), nodes,
                traffic.sessions, static_cast<unsigned long long>(seed));
  return buf;
}

Scenario
buildScenario(const ScenarioConfig& cfg)
{
  MobilityConfig mc;
  mc.nodeCount = cfg.nodes;
  mc.speed = cfg.speed;
  mc.seed = cfg.seed;
  mc.duration = cfg.duration;
  mc.sampleInterval = cfg.sampleInterval;

  Scenario sc;
  sc.traces = generateTraces(buildGrid(cfg.grid.rows, cfg.grid.cols, cfg.grid.spacing), mc);
  sc.channel = cfg.channel;
  sc.protocol = cfg.protocol;
  sc.traffic = cfg.traffic;
  sc.duration = fromSeconds(cfg.duration);
  sc.seed = cfg.seed;
  return sc;
}

ScenarioRun
runScenario(const ScenarioConfig& cfg)
{
  Scenario sc = buildScenario(cfg);
  ScenarioRun out;
  out.traces = sc.traces;
  double range = sc.channel.range;
  {
    Simulator sim(std::move(sc));
    out.result = sim.run();
  }
  const EventLog& log = out.result.log;
  auto counts = countLog(log);
  auto episodes = measureLinkEpisodes(out.traces, range, cfg.duration);

  MetricsRecord& m = out.metrics;
  m.scenarioId = cfg.id();
  m.protocol = std::string(protocolName(cfg.protocol.kind));
  m.profile = std::string(profileName(cfg.protocol.profile));
  m.nodes = cfg.nodes;
  m.sessions = cfg.traffic.sessions;
  m.seed = cfg.seed;
  m.pdr = computePdr(log);
  m.ae2edMs = computeAe2ed(log);
  m.nro = computeNro(log);
  m.meanLinkDuration = meanLinkDuration(episodes);
  m.meanPathStability = measurePathStability(log, out.traces, range, cfg.duration);
  m.dataSent = counts.dataOriginated;
  m.dataDelivered = counts.dataDelivered;
  m.controlSent = counts.controlSent;
  return out;
}

} // namespace vanet
