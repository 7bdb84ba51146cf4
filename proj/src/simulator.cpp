#include "vanet/simulator.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

namespace vanet {

// Traffic -------------------------------------------------------------------

void
TrafficConfig::validate() const
{
  if (!(rate > 0.0))
    throw DomainError("CBR rate must be positive");
  if (packetSize == 0)
    throw DomainError("packet size must be positive");
  if (start < SimTime::zero() || stagger < SimTime::zero())
    throw DomainError("traffic start and stagger must be non-negative");
  if (ttl == 0)
    throw DomainError("data ttl must be positive");
}

std::vector<CbrSession>
planSessions(const TrafficConfig& cfg, std::size_t nodeCount, std::uint64_t seed)
{
  if (cfg.sessions > 0 && cfg.sessions > nodeCount * (nodeCount - 1))
    throw DomainError("more sessions than distinct node pairs");
  RandomStream rng(seed, StreamTag::Traffic);
  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<CbrSession> out;
  for (std::size_t k = 0; k < cfg.sessions; ++k) {
    NodeId src, dst;
    do {
      src = static_cast<NodeId>(rng.index(nodeCount));
      dst = static_cast<NodeId>(rng.index(nodeCount));
    } while (src == dst || used.count({src, dst}));
    used.insert({src, dst});
    auto offset = SimTime(static_cast<std::int64_t>(rng.uniform01() *
                                                    static_cast<double>(cfg.stagger.count())));
    out.push_back({static_cast<std::uint32_t>(k), src, dst,
                   cfg.start + static_cast<std::int64_t>(k) * cfg.stagger + offset});
  }
  return out;
}

// Event log -----------------------------------------------------------------

std::string_view
eventName(LogEvent e)
{
  switch (e) {
  case LogEvent::Send:
    return "send";
  case LogEvent::Recv:
    return "recv";
  case LogEvent::Drop:
    return "drop";
  case LogEvent::Originate:
    return "originate";
  case LogEvent::Deliver:
    return "deliver";
  }
  return "?";
}

std::string_view
dropReasonName(DropReason r)
{
  switch (r) {
  case DropReason::None:
    return "none";
  case DropReason::NoRoute:
    return "no-route";
  case DropReason::TtlExpired:
    return "ttl-expired";
  case DropReason::ChannelLoss:
    return "channel-loss";
  case DropReason::LinkBroken:
    return "link-broken";
  case DropReason::BufferOverflow:
    return "buffer-overflow";
  case DropReason::DiscoveryFailed:
    return "discovery-failed";
  }
  return "?";
}

namespace {

std::string
nodeField(NodeId n)
{
  return n == kBroadcast ? std::string("*") : std::to_string(n);
}

NodeId
parseNode(const std::string& s)
{
  return s == "*" ? kBroadcast : static_cast<NodeId>(std::stoul(s));
}

SimTime
parseSeconds(const std::string& s)
{
  auto dot = s.find('.');
  std::int64_t whole = std::stoll(s.substr(0, dot));
  std::int64_t frac = 0;
  if (dot != std::string::npos) {
    std::string digits = s.substr(dot + 1);
    digits.resize(9, '0');
    frac = std::stoll(digits);
  }
  return SimTime(whole * 1'000'000'000 + frac);
}

template<typename E, std::size_t N>
E
parseEnum(const std::string& s, const std::array<E, N>& values, std::string_view (*name)(E))
{
  for (E v : values)
    if (name(v) == s)
      return v;
  throw DomainError("unknown log field value: " + s);
}

} // namespace

void
EventLog::writeCsv(std::ostream& os) const
{
  os << "time_s,event,node,packet_id,class,protocol,src,dst,ttl,size_bytes\n";
  for (const auto& r : records) {
    os << formatSeconds(r.time) << ',' << eventName(r.event) << ',' << r.node << ','
       << r.packetId << ',' << className(r.cls) << ',' << protocolName(r.protocol) << ','
       << nodeField(r.source) << ',' << nodeField(r.destination) << ',' << r.ttl << ','
       << r.sizeBytes << '\n';
  }
}

EventLog
EventLog::readCsv(std::istream& is)
{
  static constexpr std::array events{LogEvent::Send, LogEvent::Recv, LogEvent::Drop,
                                     LogEvent::Originate, LogEvent::Deliver};
  static constexpr std::array classes{PacketClass::Data, PacketClass::Control};
  static constexpr std::array protocols{ProtocolKind::Dsdv, ProtocolKind::Dymo,
                                        ProtocolKind::Olsr};
  EventLog log;
  std::string line;
  if (!std::getline(is, line))
    return log;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
      f.push_back(cell);
    if (f.size() != 10)
      throw DomainError("malformed log row: " + line);
    LogRecord r;
    r.time = parseSeconds(f[0]);
    r.event = parseEnum(f[1], events, eventName);
    r.node = parseNode(f[2]);
    r.packetId = std::stoull(f[3]);
    r.cls = parseEnum(f[4], classes, className);
    r.protocol = parseEnum(f[5], protocols, protocolName);
    r.source = parseNode(f[6]);
    r.destination = parseNode(f[7]);
    r.ttl = static_cast<std::uint32_t>(std::stoul(f[8]));
    r.sizeBytes = static_cast<std::uint32_t>(std::stoul(f[9]));
    log.records.push_back(r);
  }
  return log;
}

void
writeRouteChangesCsv(std::ostream& os, std::span<const RouteChange> changes)
{
  os << "time_s,node,dst,next_hop,hops\n";
  for (const auto& c : changes) {
    os << formatSeconds(c.time) << ',' << c.node << ',' << c.destination << ',';
    if (c.route)
      os << c.route->nextHop << ',' << c.route->hops;
    else
      os << ',';
    os << '\n';
  }
}

// Simulator -----------------------------------------------------------------

void
Scenario::validate() const
{
  if (traces.empty())
    throw DomainError("scenario has no nodes");
  if (duration <= SimTime::zero())
    throw DomainError("duration must be positive");
  channel.validate();
  protocol.validate();
  traffic.validate();
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& t = traces[i];
    if (t.node != i)
      throw DomainError("trace node ids must be 0..n-1 in order");
    if (t.samples.empty() || t.samples.size() != traces[0].samples.size() ||
        t.sampleInterval != traces[0].sampleInterval)
      throw DomainError("traces must share one sampling grid");
    if (fromSeconds(t.duration()) < duration)
      throw DomainError("traces end before the scenario duration");
  }
}

Simulator::Simulator(Scenario scenario)
  : m_scenario(std::move(scenario))
  , m_controlRng(m_scenario.seed, StreamTag::ControlChannel)
  , m_dataRng(m_scenario.seed, StreamTag::DataChannel)
{
  m_scenario.validate();
  std::size_t n = m_scenario.traces.size();
  m_nodes.resize(n);
  m_controlByType.assign(n, {});
  m_protocolRng.reserve(n);
  for (NodeId i = 0; i < n; ++i) {
    m_nodes[i].state = m_scenario.traces[i].samples.front().state;
    m_protocolRng.emplace_back(m_scenario.seed, StreamTag::Protocol,
                               std::initializer_list<std::uint64_t>{i});
  }
  for (NodeId i = 0; i < n; ++i)
    m_nodes[i].agent = m_scenario.agents ? m_scenario.agents(*this, i)
                                         : makeProtocol(m_scenario.protocol, *this, i);

  if (m_scenario.traces[0].samples.size() > 1)
    m_scheduler.schedule(fromSeconds(m_scenario.traces[0].samples[1].time), EventKind::TraceUpdate,
                         [this] { updateTraces(1); });

  m_sessions = planSessions(m_scenario.traffic, n, m_scenario.seed);
  m_cbrInterval = fromSeconds(1.0 / m_scenario.traffic.rate);
  for (std::size_t s = 0; s < m_sessions.size(); ++s)
    if (m_sessions[s].start <= m_scenario.duration)
      m_scheduler.schedule(m_sessions[s].start, EventKind::TrafficGeneration,
                           [this, s] { generate(s); });

  for (auto& node : m_nodes)
    node.agent->start();
}

Simulator::~Simulator() = default;

void
Simulator::runUntil(SimTime until)
{
  while (auto t = m_scheduler.peekTime()) {
    if (*t > until)
      break;
    auto ev = m_scheduler.nextEvent();
    ev->action();
  }
}

RunResult
Simulator::run()
{
  runUntil(m_scenario.duration);
  RunResult out;
  out.log = std::move(m_log);
  out.routeChanges = std::move(m_routeChanges);
  out.sessions = m_sessions;
  out.duration = m_scenario.duration;
  m_log = {};
  m_routeChanges = {};
  return out;
}

RoutingProtocol&
Simulator::protocol(NodeId n)
{
  return *m_nodes.at(n).agent;
}

const RoutingProtocol&
Simulator::protocol(NodeId n) const
{
  return *m_nodes.at(n).agent;
}

KinematicState
Simulator::stateOf(NodeId n) const
{
  const auto& node = m_nodes.at(n);
  if (now() == node.updatedAt)
    return node.state;
  KinematicState s = node.state;
  s.position = node.state.positionAfter(toSeconds(now() - node.updatedAt));
  return s;
}

bool
Simulator::linked(NodeId a, NodeId b) const
{
  return inRange(positionOf(a), positionOf(b), m_scenario.channel.range);
}

std::uint64_t
Simulator::controlTransmissions() const
{
  std::uint64_t total = 0;
  for (const auto& counts : m_controlByType)
    for (auto c : counts)
      total += c;
  return total;
}

std::size_t
Simulator::dataInFlight() const
{
  std::size_t n = m_dataOnAir;
  for (const auto& node : m_nodes)
    n += node.agent->bufferedData();
  return n;
}

void
Simulator::scheduleTimer(SimTime delay, std::function<void()> action)
{
  m_scheduler.schedule(now() + delay, EventKind::Timer, std::move(action));
}

RandomStream&
Simulator::protocolRng(NodeId n)
{
  return m_protocolRng.at(n);
}

void
Simulator::record(LogEvent e, NodeId node, const Packet& pkt, DropReason reason)
{
  m_log.records.push_back({now(), e, node, pkt.id, pkt.cls, pkt.protocol, pkt.source,
                           pkt.destination, pkt.ttl, pkt.sizeBytes, reason});
}

Packet
Simulator::makeControl(NodeId from, NodeId to, Message msg)
{
  Packet pkt;
  pkt.id = m_nextPacketId++;
  pkt.cls = PacketClass::Control;
  pkt.protocol = m_scenario.protocol.kind;
  pkt.source = from;
  pkt.destination = to;
  pkt.createdAt = now();
  pkt.ttl = 1;
  pkt.sizeBytes = controlSize(msg);
  ++m_controlByType[from][msg.index()];
  pkt.message = std::make_shared<const Message>(std::move(msg));
  return pkt;
}

SimTime
Simulator::arrivalDelay(RandomStream& rng)
{
  auto jitter = static_cast<std::int64_t>(rng.uniform01() *
                                          static_cast<double>(m_scenario.channel.maxJitter.count()));
  return m_scenario.channel.hopLatency + SimTime(jitter);
}

void
Simulator::broadcastControl(NodeId from, Message msg)
{
  Packet pkt = makeControl(from, kBroadcast, std::move(msg));
  record(LogEvent::Send, from, pkt);
  Position here = positionOf(from);
  const auto& ch = m_scenario.channel;
  for (NodeId r = 0; r < m_nodes.size(); ++r) {
    if (r == from)
      continue;
    Position there = positionOf(r);
    if (!inRange(here, there, ch.range))
      continue;
    if (ch.fading != Fading::None &&
        m_controlRng.uniform01() >= receptionProbability(ch, distance(here, there)))
      continue;
    m_scheduler.schedule(now() + arrivalDelay(m_controlRng), EventKind::PacketArrival,
                         [this, r, from, pkt] {
                           record(LogEvent::Recv, r, pkt);
                           m_nodes[r].agent->receiveControl(pkt, from);
                         });
  }
}

bool
Simulator::unicastControl(NodeId from, NodeId to, Message msg)
{
  Position here = positionOf(from), there = positionOf(to);
  const auto& ch = m_scenario.channel;
  if (to == from || !inRange(here, there, ch.range))
    return false;
  Packet pkt = makeControl(from, to, std::move(msg));
  record(LogEvent::Send, from, pkt);
  if (ch.fading != Fading::None &&
      m_controlRng.uniform01() >= receptionProbability(ch, distance(here, there)))
    return true;
  m_scheduler.schedule(now() + arrivalDelay(m_controlRng), EventKind::PacketArrival,
                       [this, to, from, pkt] {
                         record(LogEvent::Recv, to, pkt);
                         m_nodes[to].agent->receiveControl(pkt, from);
                       });
  return true;
}

TxResult
Simulator::transmitData(NodeId from, NodeId nextHop, Packet pkt)
{
  if (pkt.ttl == 0) {
    dropData(from, pkt, DropReason::TtlExpired);
    return TxResult::Dropped;
  }
  Position here = positionOf(from), there = positionOf(nextHop);
  const auto& ch = m_scenario.channel;
  if (nextHop == from || !inRange(here, there, ch.range))
    return TxResult::LinkBroken;
  --pkt.ttl;
  record(LogEvent::Send, from, pkt);
  if (ch.fading != Fading::None &&
      m_dataRng.uniform01() >= receptionProbability(ch, distance(here, there))) {
    dropData(from, pkt, DropReason::ChannelLoss);
    return TxResult::Sent;
  }
  ++m_dataOnAir;
  m_scheduler.schedule(now() + arrivalDelay(m_dataRng), EventKind::PacketArrival,
                       [this, nextHop, from, pkt = std::move(pkt)] {
                         arriveData(nextHop, from, pkt);
                       });
  return TxResult::Sent;
}

void
Simulator::arriveData(NodeId at, NodeId from, Packet pkt)
{
  --m_dataOnAir;
  record(LogEvent::Recv, at, pkt);
  if (at == pkt.destination) {
    pkt.deliveredAt = now();
    record(LogEvent::Deliver, at, pkt);
    return;
  }
  m_nodes[at].agent->routeData(std::move(pkt), from);
}

void
Simulator::dropData(NodeId at, const Packet& pkt, DropReason reason)
{
  record(LogEvent::Drop, at, pkt, reason);
}

void
Simulator::noteRoute(NodeId node, NodeId destination, std::optional<RouteView> route)
{
  m_routeChanges.push_back({now(), node, destination, route});
}

void
Simulator::updateTraces(std::size_t k)
{
  for (NodeId i = 0; i < m_nodes.size(); ++i) {
    m_nodes[i].updatedAt = now();
    m_nodes[i].state = m_scenario.traces[i].samples[k].state;
  }
  const auto& samples = m_scenario.traces[0].samples;
  if (k + 1 < samples.size()) {
    SimTime next = fromSeconds(samples[k + 1].time);
    if (next <= m_scenario.duration)
      m_scheduler.schedule(next, EventKind::TraceUpdate, [this, k] { updateTraces(k + 1); });
  }
}

void
Simulator::generate(std::size_t s)
{
  const auto& session = m_sessions[s];
  SimTime next = now() + m_cbrInterval;
  if (next <= m_scenario.duration)
    m_scheduler.schedule(next, EventKind::TrafficGeneration, [this, s] { generate(s); });
  originateData(session.source, session.destination, session.id);
}

std::uint64_t
Simulator::originateData(NodeId source, NodeId destination, std::uint32_t session)
{
  if (source >= m_nodes.size() || destination >= m_nodes.size() || source == destination)
    throw ContractError("bad data endpoints");
  Packet pkt;
  pkt.id = m_nextPacketId++;
  pkt.cls = PacketClass::Data;
  pkt.protocol = m_scenario.protocol.kind;
  pkt.source = source;
  pkt.destination = destination;
  pkt.createdAt = now();
  pkt.ttl = m_scenario.traffic.ttl;
  pkt.sizeBytes = m_scenario.traffic.packetSize;
  pkt.message = std::make_shared<const Message>(DataPayload{session});
  record(LogEvent::Originate, source, pkt);
  auto id = pkt.id;
  m_nodes[source].agent->routeData(std::move(pkt), std::nullopt);
  return id;
}

} // namespace vanet
