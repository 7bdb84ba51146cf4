#include "vanet/metrics.hpp"

#include "vanet/channel.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace vanet {

LogCounts
countLog(const EventLog& log)
{
  LogCounts c;
  for (const auto& r : log.records) {
    if (r.cls == PacketClass::Control) {
      if (r.event == LogEvent::Send)
        ++c.controlSent;
      continue;
    }
    switch (r.event) {
    case LogEvent::Originate:
      ++c.dataOriginated;
      break;
    case LogEvent::Deliver:
      ++c.dataDelivered;
      break;
    case LogEvent::Drop:
      ++c.dataDropped;
      break;
    default:
      break;
    }
  }
  return c;
}

std::optional<double>
computePdr(const EventLog& log)
{
  auto c = countLog(log);
  if (c.dataOriginated == 0)
    return std::nullopt;
  return static_cast<double>(c.dataDelivered) / static_cast<double>(c.dataOriginated);
}

std::optional<double>
computeAe2ed(const EventLog& log)
{
  std::unordered_map<std::uint64_t, SimTime> born;
  std::int64_t total = 0;
  std::uint64_t count = 0;
  for (const auto& r : log.records) {
    if (r.cls != PacketClass::Data)
      continue;
    if (r.event == LogEvent::Originate) {
      born[r.packetId] = r.time;
    } else if (r.event == LogEvent::Deliver) {
      auto it = born.find(r.packetId);
      if (it == born.end())
        throw DomainError("delivery of a packet that was never originated");
      total += (r.time - it->second).count();
      ++count;
    }
  }
  if (count == 0)
    return std::nullopt;
  return static_cast<double>(total) / static_cast<double>(count) / 1e6;
}

std::optional<double>
computeNro(const EventLog& log)
{
  auto c = countLog(log);
  if (c.dataDelivered == 0)
    return std::nullopt;
  return static_cast<double>(c.controlSent) / static_cast<double>(c.dataDelivered);
}

// Link episodes ----------------------------------------------------------------

namespace {

double
predictAt(const VehicleTrace& a, const VehicleTrace& b, double t, double range, double horizon)
{
  KinematicState sa = stateAt(a, t), sb = stateAt(b, t);
  double d = std::min(distance(sa.position, sb.position), range);
  return linkDuration(residualRange(range, d), relativeSpeed(sa, sb), horizon);
}

/// Crossing time between @p lo (where the pair is @p loIn) and @p hi, to 1 ms.
double
refine(const VehicleTrace& a, const VehicleTrace& b, double lo, double hi, bool loIn,
       double range)
{
  while (hi - lo > 1e-3) {
    double mid = 0.5 * (lo + hi);
    bool in = inRange(stateAt(a, mid).position, stateAt(b, mid).position, range);
    (in == loIn ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

std::vector<LinkEpisode>
measureLinkEpisodes(std::span<const VehicleTrace> traces, double range, double horizon)
{
  std::vector<LinkEpisode> out;
  if (traces.empty())
    return out;
  std::size_t samples = 0;
  for (const auto& s : traces[0].samples)
    if (s.time <= horizon)
      ++samples;
  double end = std::min(horizon, traces[0].samples[samples - 1].time);

  for (std::size_t i = 0; i < traces.size(); ++i) {
    for (std::size_t j = i + 1; j < traces.size(); ++j) {
      const auto& a = traces[i];
      const auto& b = traces[j];
      bool in = false;
      double start = 0.0;
      for (std::size_t k = 0; k < samples; ++k) {
        double t = a.samples[k].time;
        bool now = inRange(a.samples[k].state.position, b.samples[k].state.position, range);
        if (k == 0) {
          in = now;
          start = 0.0;
          continue;
        }
        if (now == in)
          continue;
        double cross = refine(a, b, a.samples[k - 1].time, t, in, range);
        if (now) {
          start = cross;
        } else {
          out.push_back({a.node, b.node, start, cross, predictAt(a, b, start, range, horizon),
                         cross - start});
        }
        in = now;
      }
      if (in)
        out.push_back(
          {a.node, b.node, start, end, predictAt(a, b, start, range, horizon), end - start});
    }
  }
  return out;
}

std::optional<double>
meanLinkDuration(std::span<const LinkEpisode> episodes)
{
  if (episodes.empty())
    return std::nullopt;
  double sum = 0.0;
  for (const auto& e : episodes)
    sum += e.measuredDuration;
  return sum / static_cast<double>(episodes.size());
}

std::optional<double>
measurePathStability(const EventLog& log, std::span<const VehicleTrace> traces, double range,
                     double horizon)
{
  struct Hop
  {
    NodeId node;
    SimTime time;
  };
  std::unordered_map<std::uint64_t, std::vector<Hop>> hops;
  std::map<std::pair<NodeId, NodeId>, std::vector<NodeId>> current;
  double sum = 0.0;
  std::uint64_t paths = 0;

  for (const auto& r : log.records) {
    if (r.cls != PacketClass::Data)
      continue;
    if (r.event == LogEvent::Send) {
      hops[r.packetId].push_back({r.node, r.time});
      continue;
    }
    if (r.event != LogEvent::Deliver)
      continue;
    auto it = hops.find(r.packetId);
    if (it == hops.end())
      continue;
    std::vector<NodeId> path;
    for (const auto& h : it->second)
      path.push_back(h.node);
    path.push_back(r.destination);
    auto& last = current[{r.source, r.destination}];
    if (path != last) {
      double worst = horizon;
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const auto& a = traces[path[k]];
        const auto& b = traces[path[k + 1]];
        double t = std::min(toSeconds(it->second[k].time), a.duration());
        worst = std::min(worst, predictAt(a, b, t, range, horizon));
      }
      sum += worst;
      ++paths;
      last = std::move(path);
    }
    hops.erase(it);
  }
  if (paths == 0)
    return std::nullopt;
  return sum / static_cast<double>(paths);
}

// CSV -------------------------------------------------------------------------

namespace {

std::string
number(const std::optional<double>& v)
{
  if (!v)
    return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", *v);
  return buf;
}

std::optional<double>
parseNumber(const std::string& s)
{
  if (s.empty())
    return std::nullopt;
  return std::stod(s);
}

} // namespace

void
writeMetricsCsv(std::ostream& os, std::span<const MetricsRecord> records)
{
  os << "scenario_id,protocol,profile,nodes,sessions,seed,pdr,ae2ed_ms,nro,"
        "mean_link_duration_s,mean_path_stability_s,data_sent,data_delivered,control_sent\n";
  for (const auto& r : records) {
    os << r.scenarioId << ',' << r.protocol << ',' << r.profile << ',' << r.nodes << ','
       << r.sessions << ',' << r.seed << ',' << number(r.pdr) << ',' << number(r.ae2edMs) << ','
       << number(r.nro) << ',' << number(r.meanLinkDuration) << ','
       << number(r.meanPathStability) << ',' << r.dataSent << ',' << r.dataDelivered << ','
       << r.controlSent << '\n';
  }
}

std::vector<MetricsRecord>
readMetricsCsv(std::istream& is)
{
  std::vector<MetricsRecord> out;
  std::string line;
  if (!std::getline(is, line))
    return out;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
      auto comma = line.find(',', pos);
      f.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos)
        break;
      pos = comma + 1;
    }
    if (f.size() != 14)
      throw DomainError("malformed metrics row: " + line);
    MetricsRecord r;
    r.scenarioId = f[0];
    r.protocol = f[1];
    r.profile = f[2];
    r.nodes = std::stoul(f[3]);
    r.sessions = std::stoul(f[4]);
    r.seed = std::stoull(f[5]);
    r.pdr = parseNumber(f[6]);
    r.ae2edMs = parseNumber(f[7]);
    r.nro = parseNumber(f[8]);
    r.meanLinkDuration = parseNumber(f[9]);
    r.meanPathStability = parseNumber(f[10]);
    r.dataSent = std::stoull(f[11]);
    r.dataDelivered = std::stoull(f[12]);
    r.controlSent = std::stoull(f[13]);
    out.push_back(std::move(r));
  }
  return out;
}

} // namespace vanet
