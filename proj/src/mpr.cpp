#include "vanet/mpr.hpp"

namespace vanet {

std::set<NodeId>
selectMprs(NodeId self, const std::set<NodeId>& oneHop, const TwoHopMap& twoHop)
{
  std::map<NodeId, std::set<NodeId>> reach; // neighbor -> strict two-hop nodes
  std::map<NodeId, std::set<NodeId>> via;   // strict two-hop node -> neighbors
  for (NodeId n : oneHop) {
    auto it = twoHop.find(n);
    if (it == twoHop.end())
      continue;
    for (NodeId t : it->second) {
      if (t == self || oneHop.count(t))
        continue;
      reach[n].insert(t);
      via[t].insert(n);
    }
  }

  std::set<NodeId> mprs;
  std::set<NodeId> uncovered;
  for (const auto& [t, ns] : via)
    uncovered.insert(t);

  auto take = [&](NodeId n) {
    mprs.insert(n);
    for (NodeId t : reach[n])
      uncovered.erase(t);
  };

  for (const auto& [t, ns] : via)
    if (ns.size() == 1)
      take(*ns.begin());

  while (!uncovered.empty()) {
    NodeId best = 0;
    std::size_t bestGain = 0;
    for (const auto& [n, targets] : reach) {
      if (mprs.count(n))
        continue;
      std::size_t gain = 0;
      for (NodeId t : targets)
        gain += uncovered.count(t);
      if (gain > bestGain) {
        best = n;
        bestGain = gain;
      }
    }
    take(best);
  }
  return mprs;
}

} // namespace vanet
