// Test-only reference computations. Nothing here calls into the routines it checks.
#ifndef VANET_TESTS_ORACLES_HPP
#define VANET_TESTS_ORACLES_HPP

#include "vanet/common.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <queue>
#include <random>
#include <set>
#include <vector>

namespace vanet::oracle {

/// Places A at 0 and B at dT0 on the complex plane and rotates unit steps into place.
inline double
coordinateSeparation(double dT0, double d1, double alphaDeg, double d2, double betaDeg)
{
  using C = std::complex<double>;
  const double rad = std::numbers::pi / 180.0;
  C a0(0.0, 0.0);
  C b0(dT0, 0.0);
  C a1 = a0 + std::polar(d1, alphaDeg * rad);
  // B's reference direction points back at A; rotating it clockwise keeps B on A's side.
  C b1 = b0 + std::polar(d2, std::numbers::pi - betaDeg * rad);
  return std::abs(b1 - a1);
}

/// Steps both nodes forward at @p step seconds; returns the first step index time
/// at which the separation exceeds range, or horizon.
inline double
steppedExpiry(const KinematicState& a, const KinematicState& b, double range, double horizon,
              double step = 1e-3)
{
  const auto limit = static_cast<std::int64_t>(horizon / step);
  for (std::int64_t k = 1; k <= limit; ++k) {
    double t = static_cast<double>(k) * step;
    double dx = (b.position.x + b.velocity.vx * t) - (a.position.x + a.velocity.vx * t);
    double dy = (b.position.y + b.velocity.vy * t) - (a.position.y + a.velocity.vy * t);
    if (dx * dx + dy * dy > range * range)
      return t;
  }
  return horizon;
}

using Graph = std::map<NodeId, std::set<NodeId>>;

/// Hop distances from @p source by breadth-first search.
inline std::map<NodeId, int>
bfsHops(const Graph& g, NodeId source)
{
  std::map<NodeId, int> dist{{source, 0}};
  std::queue<NodeId> q;
  q.push(source);
  while (!q.empty()) {
    NodeId u = q.front();
    q.pop();
    auto it = g.find(u);
    if (it == g.end())
      continue;
    for (NodeId v : it->second) {
      if (!dist.count(v)) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

/// Unit-disk adjacency for static positions.
inline Graph
diskGraph(const std::vector<Position>& pos, double range)
{
  Graph g;
  for (NodeId i = 0; i < pos.size(); ++i) {
    g[i];
    for (NodeId j = 0; j < pos.size(); ++j)
      if (i != j && distance(pos[i], pos[j]) <= range)
        g[i].insert(j);
  }
  return g;
}

/// Square lattice of side*side nodes, node id = row*side + col.
inline std::vector<Position>
latticePositions(int side, double spacing)
{
  std::vector<Position> pos;
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c)
      pos.push_back({c * spacing, r * spacing});
  return pos;
}

} // namespace vanet::oracle

#endif // VANET_TESTS_ORACLES_HPP
