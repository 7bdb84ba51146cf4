#ifndef VANET_MPR_HPP
#define VANET_MPR_HPP

#include "vanet/common.hpp"

#include <map>
#include <set>

namespace vanet {

/// Symmetric neighbor -> nodes it reports as its own symmetric neighbors.
using TwoHopMap = std::map<NodeId, std::set<NodeId>>;

/**
 * Greedy multipoint relay selection for node @p self. Strict two-hop nodes
 * (not self, not a one-hop neighbor) are the cover targets. Neighbors that are
 * the only path to some target go in first; then the neighbor covering most
 * remaining targets is added until every target is covered, ties going to the
 * lowest id.
 */
std::set<NodeId>
selectMprs(NodeId self, const std::set<NodeId>& oneHop, const TwoHopMap& twoHop);

} // namespace vanet

#endif // VANET_MPR_HPP
