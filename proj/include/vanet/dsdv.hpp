#ifndef VANET_DSDV_HPP
#define VANET_DSDV_HPP

#include "vanet/params.hpp"
#include "vanet/routing-protocol.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace vanet {

struct DsdvCandidate
{
  NodeId nextHop = 0;
  std::uint32_t metric = 0;
  std::uint32_t seq = 0;
};

struct DsdvRoute
{
  NodeId nextHop = 0;
  std::uint32_t metric = 0;
  std::uint32_t seq = 0;
  /// Last time the next hop advertised this destination.
  SimTime heardAt{};
  SimTime brokenAt{};
  bool advertise = false;
  SimTime advertiseAt{};
  /// A newer but longer route held back while the current one still works.
  std::optional<DsdvCandidate> pending;

  bool
  broken() const
  {
    return metric == kDsdvInfinity;
  }
};

/**
 * Distance-vector table with destination sequence numbers. Newer sequence
 * numbers win unless they come with a longer path from a different neighbor
 * while the current route is still alive; such offers wait as a pending
 * candidate. Equal sequence numbers win only with a strictly shorter path.
 * Worsened metrics are advertised after the settling time; everything else
 * is advertised at once.
 */
class DsdvTable
{
public:
  DsdvTable(NodeId self, DsdvParams params);

  NodeId
  self() const
  {
    return m_self;
  }

  std::uint32_t
  ownSeq() const
  {
    return m_seq;
  }

  const std::map<NodeId, DsdvRoute>&
  routes() const
  {
    return m_routes;
  }

  const DsdvRoute*
  find(NodeId dst) const;

  /// Apply one neighbor's advertisement; returns destinations whose route changed.
  std::vector<NodeId>
  process(std::span<const DsdvAdvert> adverts, NodeId from, SimTime now);

  /// Mark every route through @p nextHop broken; returns them.
  std::vector<NodeId>
  breakVia(NodeId nextHop, SimTime now);

  /// Switch to pending candidates whose current route has gone quiet or broken.
  std::vector<NodeId>
  promotePending(SimTime now);

  /// Forget broken routes older than @p age.
  void
  purge(SimTime now, SimTime age);

  /// Everything including ourselves; bumps our sequence number first.
  std::vector<DsdvAdvert>
  fullDump();

  /// Routes flagged for advertisement whose delay has passed.
  std::vector<DsdvAdvert>
  takeDue(SimTime now);

  /// Earliest pending advertisement time, if any.
  std::optional<SimTime>
  nextDue() const;

private:
  void
  flag(DsdvRoute& r, SimTime at);

  void
  adopt(DsdvRoute& r, const DsdvCandidate& c, SimTime now);

  NodeId m_self;
  DsdvParams m_params;
  std::uint32_t m_seq = 0;
  bool m_selfAdvertise = false;
  std::map<NodeId, DsdvRoute> m_routes;
};

class Dsdv : public RoutingProtocol
{
public:
  Dsdv(Simulator& sim, NodeId self, DsdvParams params);

  void
  start() override;

  void
  receiveControl(const Packet& pkt, NodeId from) override;

  void
  routeData(Packet pkt, std::optional<NodeId> previousHop) override;

  std::map<NodeId, RouteView>
  routingTable() const override;

  const DsdvTable&
  table() const
  {
    return m_table;
  }

  std::uint64_t
  fullDumps() const
  {
    return m_fullDumps;
  }

  std::uint64_t
  incrementalUpdates() const
  {
    return m_incremental;
  }

private:
  void
  periodic();

  void
  requestTrigger(SimTime at);

  void
  sendIncremental();

  void
  linkFailed(NodeId nextHop);

  void
  noteChanges(const std::vector<NodeId>& dsts);

  DsdvParams m_params;
  DsdvTable m_table;
  std::map<NodeId, SimTime> m_neighborHeard;
  std::optional<SimTime> m_nextTrigger;
  SimTime m_lastTriggered = SimTime::min();
  std::uint64_t m_fullDumps = 0;
  std::uint64_t m_incremental = 0;
};

} // namespace vanet

#endif // VANET_DSDV_HPP
