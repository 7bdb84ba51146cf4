// Small scenario builders shared by the unit and acceptance tests.
#ifndef VANET_TESTS_FIXTURES_HPP
#define VANET_TESTS_FIXTURES_HPP

#include "oracles.hpp"

#include "vanet/simulator.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace vanet::fixture {

using namespace std::chrono_literals;

/// Parked vehicles at @p pos for @p seconds.
inline Scenario
staticScenario(const std::vector<Position>& pos, ProtocolKind kind,
               Profile profile = Profile::Default, double seconds = 600.0)
{
  Scenario sc;
  for (NodeId i = 0; i < pos.size(); ++i)
    sc.traces.push_back(staticTrace(i, pos[i], seconds, 1.0));
  sc.protocol = ProtocolSetup::make(kind, profile);
  sc.duration = fromSeconds(seconds);
  return sc;
}

/// Parked at @p from until @p departAt (whole seconds), then constant velocity.
inline VehicleTrace
driveAway(NodeId node, Position from, Velocity v, double departAt, double seconds)
{
  VehicleTrace tr;
  tr.node = node;
  tr.sampleInterval = 1.0;
  for (int k = 0; k <= static_cast<int>(seconds); ++k) {
    double t = k;
    double moving = std::max(0.0, t - departAt);
    Position p{from.x + v.vx * moving, from.y + v.vy * moving};
    tr.samples.push_back({t, {p, t >= departAt ? v : Velocity{0, 0}}});
  }
  return tr;
}

/// Nodes on the x axis, @p spacing apart.
inline std::vector<Position>
line(std::size_t n, double spacing)
{
  std::vector<Position> pos;
  for (std::size_t i = 0; i < n; ++i)
    pos.push_back({static_cast<double>(i) * spacing, 0.0});
  return pos;
}

/// Routes that disagree with breadth-first search over the unit-disk graph:
/// wrong hop count, a next-hop walk that loops or leaves the graph, or a
/// route to an unreachable node.
inline std::size_t
routeErrors(const Simulator& sim, const std::vector<Position>& pos, double range)
{
  auto g = oracle::diskGraph(pos, range);
  std::vector<std::map<NodeId, RouteView>> tables;
  for (NodeId n = 0; n < pos.size(); ++n)
    tables.push_back(sim.protocol(n).routingTable());
  std::size_t bad = 0;
  for (NodeId s = 0; s < pos.size(); ++s) {
    auto truth = oracle::bfsHops(g, s);
    for (NodeId d = 0; d < pos.size(); ++d) {
      if (d == s)
        continue;
      auto it = tables[s].find(d);
      if (!truth.count(d)) {
        bad += it != tables[s].end();
        continue;
      }
      if (it == tables[s].end() || static_cast<int>(it->second.hops) != truth[d]) {
        ++bad;
        continue;
      }
      NodeId at = s;
      std::size_t steps = 0;
      while (at != d && steps <= pos.size()) {
        auto r = tables[at].find(d);
        if (r == tables[at].end() || !g[at].count(r->second.nextHop))
          break;
        at = r->second.nextHop;
        ++steps;
      }
      bad += at != d || static_cast<int>(steps) != truth[d];
    }
  }
  return bad;
}

inline std::string
csv(const EventLog& log)
{
  std::ostringstream os;
  log.writeCsv(os);
  return os.str();
}

inline std::size_t
countEvents(const EventLog& log, LogEvent e, PacketClass c)
{
  std::size_t n = 0;
  for (const auto& r : log.records)
    n += r.event == e && r.cls == c;
  return n;
}

} // namespace vanet::fixture

#endif // VANET_TESTS_FIXTURES_HPP
