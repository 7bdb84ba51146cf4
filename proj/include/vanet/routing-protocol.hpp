#ifndef VANET_ROUTING_PROTOCOL_HPP
#define VANET_ROUTING_PROTOCOL_HPP

#include "vanet/packet.hpp"

#include <map>
#include <memory>
#include <optional>

namespace vanet {

class Simulator;
struct ProtocolSetup;

struct RouteView
{
  NodeId nextHop = 0;
  std::uint32_t hops = 0;

  friend bool operator==(const RouteView&, const RouteView&) = default;
};

/// One node's routing agent. Instances talk to each other only through the simulator.
class RoutingProtocol
{
public:
  RoutingProtocol(Simulator& sim, NodeId self)
    : m_sim(sim)
    , m_self(self)
  {
  }

  virtual ~RoutingProtocol() = default;

  RoutingProtocol(const RoutingProtocol&) = delete;
  RoutingProtocol&
  operator=(const RoutingProtocol&) = delete;

  NodeId
  self() const
  {
    return m_self;
  }

  /// Called once at time zero.
  virtual void
  start() = 0;

  virtual void
  receiveControl(const Packet& pkt, NodeId from) = 0;

  /**
   * Forward a data packet that is not addressed to this node. @p previousHop is
   * empty when the packet was just originated here.
   */
  virtual void
  routeData(Packet pkt, std::optional<NodeId> previousHop) = 0;

  /// Currently usable routes to other nodes.
  virtual std::map<NodeId, RouteView>
  routingTable() const = 0;

  /// Data packets held while waiting for a route.
  virtual std::size_t
  bufferedData() const
  {
    return 0;
  }

protected:
  Simulator& m_sim;
  NodeId m_self;
};

std::unique_ptr<RoutingProtocol>
makeProtocol(const ProtocolSetup& setup, Simulator& sim, NodeId self);

} // namespace vanet

#endif // VANET_ROUTING_PROTOCOL_HPP
