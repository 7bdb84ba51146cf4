#ifndef VANET_SIMULATOR_HPP
#define VANET_SIMULATOR_HPP

#include "vanet/channel.hpp"
#include "vanet/mobility.hpp"
#include "vanet/packet.hpp"
#include "vanet/params.hpp"
#include "vanet/random.hpp"
#include "vanet/routing-protocol.hpp"
#include "vanet/scheduler.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace vanet {

// Traffic -------------------------------------------------------------------

struct TrafficConfig
{
  std::size_t sessions = 0;
  double rate = 4.0; ///< packets per second per session
  std::uint32_t packetSize = 1000;
  /// Session k starts in [start + k * stagger, start + (k + 1) * stagger).
  SimTime start = std::chrono::seconds(10);
  SimTime stagger = std::chrono::seconds(1);
  std::uint32_t ttl = 32;

  void
  validate() const;
};

struct CbrSession
{
  std::uint32_t id = 0;
  NodeId source = 0;
  NodeId destination = 0;
  SimTime start{};

  friend bool operator==(const CbrSession&, const CbrSession&) = default;
};

/**
 * Distinct (source, destination) pairs drawn in order from the seed's traffic
 * stream, so the first k sessions of a larger plan equal a plan of k sessions.
 */
std::vector<CbrSession>
planSessions(const TrafficConfig& cfg, std::size_t nodeCount, std::uint64_t seed);

// Event log -----------------------------------------------------------------

enum class LogEvent {
  Send,
  Recv,
  Drop,
  Originate,
  Deliver,
};

enum class DropReason {
  None,
  NoRoute,
  TtlExpired,
  ChannelLoss,
  LinkBroken,
  BufferOverflow,
  DiscoveryFailed,
};

std::string_view
eventName(LogEvent e);

std::string_view
dropReasonName(DropReason r);

struct LogRecord
{
  SimTime time{};
  LogEvent event = LogEvent::Send;
  NodeId node = 0;
  std::uint64_t packetId = 0;
  PacketClass cls = PacketClass::Data;
  ProtocolKind protocol = ProtocolKind::Dsdv;
  NodeId source = 0;
  NodeId destination = 0;
  std::uint32_t ttl = 0;
  std::uint32_t sizeBytes = 0;
  /// Kept in memory only; not part of the CSV.
  DropReason reason = DropReason::None;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

struct EventLog
{
  std::vector<LogRecord> records;

  /// Header `time_s,event,node,packet_id,class,protocol,src,dst,ttl,size_bytes`;
  /// a broadcast destination prints as `*`.
  void
  writeCsv(std::ostream& os) const;

  /// Inverse of writeCsv (drop reasons are not recovered).
  static EventLog
  readCsv(std::istream& is);
};

struct RouteChange
{
  SimTime time{};
  NodeId node = 0;
  NodeId destination = 0;
  /// Empty when the route was lost.
  std::optional<RouteView> route;
};

void
writeRouteChangesCsv(std::ostream& os, std::span<const RouteChange> changes);

// Simulator -----------------------------------------------------------------

class Simulator;

using AgentFactory = std::function<std::unique_ptr<RoutingProtocol>(Simulator&, NodeId)>;

struct Scenario
{
  std::vector<VehicleTrace> traces;
  ChannelConfig channel;
  ProtocolSetup protocol;
  TrafficConfig traffic;
  SimTime duration = std::chrono::seconds(600);
  std::uint64_t seed = 1;
  /// Replaces the agents built from `protocol` when set.
  AgentFactory agents;

  void
  validate() const;
};

struct RunResult
{
  EventLog log;
  std::vector<RouteChange> routeChanges;
  std::vector<CbrSession> sessions;
  SimTime duration{};
};

enum class TxResult {
  Sent,
  /// Next hop out of range; nothing was transmitted.
  LinkBroken,
  /// The packet was dropped and logged (ttl exhausted).
  Dropped,
};

/**
 * Single-run discrete-event engine. Owns the clock, the node positions, one
 * routing agent per node and the packet log. Protocol agents call back into
 * the transmit/timer services below.
 */
class Simulator
{
public:
  explicit Simulator(Scenario scenario);
  ~Simulator();

  Simulator(const Simulator&) = delete;
  Simulator&
  operator=(const Simulator&) = delete;

  /// Process every event scheduled at or before @p until.
  void
  runUntil(SimTime until);

  /// Run to the scenario duration and hand over the log.
  RunResult
  run();

  SimTime
  now() const
  {
    return m_scheduler.now();
  }

  std::size_t
  nodeCount() const
  {
    return m_nodes.size();
  }

  const Scenario&
  scenario() const
  {
    return m_scenario;
  }

  const EventLog&
  log() const
  {
    return m_log;
  }

  const std::vector<RouteChange>&
  routeChanges() const
  {
    return m_routeChanges;
  }

  const std::vector<CbrSession>&
  sessions() const
  {
    return m_sessions;
  }

  RoutingProtocol&
  protocol(NodeId n);

  const RoutingProtocol&
  protocol(NodeId n) const;

  KinematicState
  stateOf(NodeId n) const;

  Position
  positionOf(NodeId n) const
  {
    return stateOf(n).position;
  }

  bool
  linked(NodeId a, NodeId b) const;

  /// Control transmissions of message type @p T by node @p n (every hop counts).
  template<typename T>
  std::uint64_t
  controlTransmissions(NodeId n) const
  {
    return m_controlByType.at(n)[variantIndex<T>()];
  }

  std::uint64_t
  controlTransmissions() const;

  /// Data packets on the air or held in protocol buffers.
  std::size_t
  dataInFlight() const;

  // Services for routing agents ---------------------------------------------

  void
  scheduleTimer(SimTime delay, std::function<void()> action);

  RandomStream&
  protocolRng(NodeId n);

  /// One transmission heard by every node in range.
  void
  broadcastControl(NodeId from, Message msg);

  /// False (and nothing sent) when @p to is out of range.
  bool
  unicastControl(NodeId from, NodeId to, Message msg);

  /// Hand a data packet to the next hop; decrements ttl.
  TxResult
  transmitData(NodeId from, NodeId nextHop, Packet pkt);

  /// Originates one data packet at @p source now, as a CBR tick would. Returns its id.
  std::uint64_t
  originateData(NodeId source, NodeId destination, std::uint32_t session = 0);

  void
  dropData(NodeId at, const Packet& pkt, DropReason reason);

  void
  noteRoute(NodeId node, NodeId destination, std::optional<RouteView> route);

private:
  struct NodeState
  {
    SimTime updatedAt{};
    KinematicState state;
    std::unique_ptr<RoutingProtocol> agent;
  };

  template<typename T, std::size_t I = 0>
  static constexpr std::size_t
  variantIndex()
  {
    if constexpr (std::is_same_v<std::variant_alternative_t<I, Message>, T>)
      return I;
    else
      return variantIndex<T, I + 1>();
  }

  void
  record(LogEvent e, NodeId node, const Packet& pkt, DropReason reason = DropReason::None);

  Packet
  makeControl(NodeId from, NodeId to, Message msg);

  SimTime
  arrivalDelay(RandomStream& rng);

  void
  updateTraces(std::size_t sampleIndex);

  void
  generate(std::size_t session);

  void
  arriveData(NodeId at, NodeId from, Packet pkt);

  Scenario m_scenario;
  Scheduler m_scheduler;
  std::vector<NodeState> m_nodes;
  std::vector<RandomStream> m_protocolRng;
  RandomStream m_controlRng;
  RandomStream m_dataRng;
  std::vector<CbrSession> m_sessions;
  SimTime m_cbrInterval{};
  std::uint64_t m_nextPacketId = 1;
  EventLog m_log;
  std::vector<RouteChange> m_routeChanges;
  std::vector<std::array<std::uint64_t, std::variant_size_v<Message>>> m_controlByType;
  std::size_t m_dataOnAir = 0;
};

} // namespace vanet

#endif // VANET_SIMULATOR_HPP
