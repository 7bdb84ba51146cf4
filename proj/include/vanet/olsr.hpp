#ifndef VANET_OLSR_HPP
#define VANET_OLSR_HPP

#include "vanet/params.hpp"
#include "vanet/routing-protocol.hpp"

#include <map>
#include <set>
#include <utility>

namespace vanet {

/**
 * Proactive link-state routing. Hellos (one hop) build the link, two-hop and
 * MPR-selector sets; TCs carry each node's selector set and are relayed only
 * by MPRs. Routes are shortest hop paths over neighbors, two-hop neighbors and
 * the advertised topology.
 */
class Olsr : public RoutingProtocol
{
public:
  Olsr(Simulator& sim, NodeId self, OlsrParams params);

  void
  start() override;

  void
  receiveControl(const Packet& pkt, NodeId from) override;

  void
  routeData(Packet pkt, std::optional<NodeId> previousHop) override;

  std::map<NodeId, RouteView>
  routingTable() const override;

  std::set<NodeId>
  symmetricNeighbors() const;

  const std::set<NodeId>&
  mprs() const
  {
    return m_mprs;
  }

  std::set<NodeId>
  mprSelectors() const;

  std::uint64_t
  hellosSent() const
  {
    return m_hellos;
  }

  std::uint64_t
  tcsOriginated() const
  {
    return m_tcsOriginated;
  }

  std::uint64_t
  tcsForwarded() const
  {
    return m_tcsForwarded;
  }

private:
  struct Link
  {
    SimTime heardUntil{};
    SimTime symUntil{};
  };

  struct Topology
  {
    std::uint32_t ansn = 0;
    std::set<NodeId> selectors;
    SimTime until{};
  };

  bool
  isSymmetric(NodeId n) const;

  void
  sendHello();

  void
  sendTc();

  void
  purge();

  void
  neighborhoodChanged();

  void
  onHello(const OlsrHello& h, NodeId from);

  void
  onTc(const OlsrTc& tc, NodeId from);

  void
  computeRoutes() const;

  OlsrParams m_params;
  std::map<NodeId, Link> m_links;
  std::map<NodeId, std::map<NodeId, SimTime>> m_twoHop;
  std::map<NodeId, SimTime> m_selectors;
  std::set<NodeId> m_mprs;
  std::set<NodeId> m_lastSymmetric;
  std::map<NodeId, Topology> m_topology;
  std::set<std::pair<NodeId, std::uint32_t>> m_seen;
  std::set<NodeId> m_advertised;
  std::uint32_t m_messageSeq = 0;
  std::uint32_t m_ansn = 0;
  std::uint64_t m_hellos = 0;
  std::uint64_t m_tcsOriginated = 0;
  std::uint64_t m_tcsForwarded = 0;

  mutable bool m_dirty = true;
  mutable std::map<NodeId, RouteView> m_routes;
};

} // namespace vanet

#endif // VANET_OLSR_HPP
