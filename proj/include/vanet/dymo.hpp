#ifndef VANET_DYMO_HPP
#define VANET_DYMO_HPP

#include "vanet/params.hpp"
#include "vanet/routing-protocol.hpp"

#include <deque>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace vanet {

struct DymoRoute
{
  NodeId nextHop = 0;
  std::uint32_t hops = 0;
  std::uint32_t seq = 0;
  SimTime expires{};
  bool valid = false;
  /// Neighbors that forward traffic to this destination through us.
  std::set<NodeId> precursors;
};

/// One expanding-ring flood sent by a discovery origin.
struct RreqRound
{
  SimTime time{};
  NodeId target = 0;
  std::uint32_t ttl = 0;
  std::uint32_t round = 0;
};

/**
 * Reactive on-demand routing. A source without a route buffers its packets and
 * floods RREQs in expanding rings until an RREP arrives or the attempts run
 * out. Link breaks are found when a unicast fails and reported upstream with
 * RERRs.
 */
class Dymo : public RoutingProtocol
{
public:
  Dymo(Simulator& sim, NodeId self, DymoParams params);

  void
  start() override;

  void
  receiveControl(const Packet& pkt, NodeId from) override;

  void
  routeData(Packet pkt, std::optional<NodeId> previousHop) override;

  std::map<NodeId, RouteView>
  routingTable() const override;

  const std::map<NodeId, DymoRoute>&
  routes() const
  {
    return m_routes;
  }

  const std::vector<RreqRound>&
  rreqRounds() const
  {
    return m_rounds;
  }

  std::uint64_t
  discoveriesFailed() const
  {
    return m_failed;
  }

  std::uint64_t
  rerrSent() const
  {
    return m_rerrSent;
  }

  std::size_t
  bufferedData() const override
  {
    return m_buffer.size();
  }

private:
  struct Discovery
  {
    std::uint32_t ttl = 0;
    std::uint32_t round = 0;
    std::uint64_t token = 0;
  };

  DymoRoute*
  validRoute(NodeId dst);

  const DymoRoute*
  validRoute(NodeId dst) const;

  bool
  offer(NodeId dst, NodeId nextHop, std::uint32_t hops, std::uint32_t seq);

  void
  refresh(DymoRoute& r);

  void
  forward(Packet pkt, std::optional<NodeId> previousHop);

  void
  buffer(Packet pkt);

  void
  discover(NodeId target);

  void
  sendRound(NodeId target, Discovery& d);

  void
  roundExpired(NodeId target, std::uint64_t token);

  void
  flush(NodeId target);

  void
  linkBroken(NodeId nextHop);

  void
  sendRerr(std::vector<DymoUnreachable> list);

  void
  onRreq(const DymoRreq& m, NodeId from);

  void
  onRrep(const DymoRrep& m, NodeId from);

  void
  onRerr(const DymoRerr& m, NodeId from);

  DymoParams m_params;
  std::uint32_t m_seq = 0;
  std::map<NodeId, DymoRoute> m_routes;
  std::set<std::pair<NodeId, std::uint32_t>> m_seen;
  std::map<NodeId, Discovery> m_discoveries;
  std::deque<Packet> m_buffer;
  std::uint64_t m_nextToken = 1;
  std::vector<RreqRound> m_rounds;
  std::uint64_t m_failed = 0;
  std::uint64_t m_rerrSent = 0;
  std::map<NodeId, SimTime> m_rerrAt;
  static constexpr SimTime kRerrHoldDown = std::chrono::seconds(1);
};

} // namespace vanet

#endif // VANET_DYMO_HPP
