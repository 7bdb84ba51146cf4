#include "vanet/olsr.hpp"

#include "vanet/mpr.hpp"
#include "vanet/simulator.hpp"

#include <algorithm>

namespace vanet {

Olsr::Olsr(Simulator& sim, NodeId self, OlsrParams params)
  : RoutingProtocol(sim, self)
  , m_params(params)
{
}

void
Olsr::start()
{
  auto& rng = m_sim.protocolRng(m_self);
  auto offset = [&rng](SimTime interval) {
    return SimTime(
      static_cast<std::int64_t>(rng.uniform01() * static_cast<double>(interval.count())));
  };
  SimTime hello = offset(m_params.helloInterval);
  SimTime tc = offset(m_params.tcInterval);
  m_sim.scheduleTimer(hello, [this] { sendHello(); });
  m_sim.scheduleTimer(tc, [this] { sendTc(); });
}

bool
Olsr::isSymmetric(NodeId n) const
{
  auto it = m_links.find(n);
  return it != m_links.end() && it->second.symUntil > m_sim.now();
}

std::set<NodeId>
Olsr::symmetricNeighbors() const
{
  std::set<NodeId> out;
  for (const auto& [n, link] : m_links)
    if (link.symUntil > m_sim.now())
      out.insert(n);
  return out;
}

std::set<NodeId>
Olsr::mprSelectors() const
{
  std::set<NodeId> out;
  for (const auto& [n, until] : m_selectors)
    if (until > m_sim.now())
      out.insert(n);
  return out;
}

void
Olsr::purge()
{
  SimTime now = m_sim.now();
  bool neighborhood = false;
  for (auto it = m_links.begin(); it != m_links.end();) {
    if (it->second.heardUntil <= now) {
      neighborhood |= it->second.symUntil > SimTime::zero();
      m_twoHop.erase(it->first);
      it = m_links.erase(it);
    } else {
      ++it;
    }
  }
  for (auto it = m_twoHop.begin(); it != m_twoHop.end();) {
    bool symmetric = isSymmetric(it->first);
    auto before = it->second.size();
    std::erase_if(it->second, [&](const auto& kv) { return !symmetric || kv.second <= now; });
    neighborhood |= it->second.size() != before;
    it = it->second.empty() ? m_twoHop.erase(it) : std::next(it);
  }
  std::erase_if(m_selectors, [&](const auto& kv) { return kv.second <= now; });
  auto topoBefore = m_topology.size();
  std::erase_if(m_topology, [&](const auto& kv) { return kv.second.until <= now; });
  if (m_topology.size() != topoBefore)
    m_dirty = true;
  if (neighborhood || symmetricNeighbors() != m_lastSymmetric)
    neighborhoodChanged();
}

void
Olsr::neighborhoodChanged()
{
  std::set<NodeId> oneHop = symmetricNeighbors();
  m_lastSymmetric = oneHop;
  TwoHopMap twoHop;
  for (const auto& [n, reach] : m_twoHop) {
    if (!oneHop.count(n))
      continue;
    for (const auto& [t, until] : reach)
      if (until > m_sim.now())
        twoHop[n].insert(t);
  }
  m_mprs = selectMprs(m_self, oneHop, twoHop);
  m_dirty = true;
}

void
Olsr::sendHello()
{
  purge();
  OlsrHello hello;
  SimTime now = m_sim.now();
  for (const auto& [n, link] : m_links) {
    if (link.heardUntil <= now)
      continue;
    OlsrLinkCode code = OlsrLinkCode::Asymmetric;
    if (link.symUntil > now)
      code = m_mprs.count(n) ? OlsrLinkCode::Mpr : OlsrLinkCode::Symmetric;
    hello.neighbors.push_back({n, code});
  }
  m_sim.broadcastControl(m_self, std::move(hello));
  ++m_hellos;
  m_sim.scheduleTimer(m_params.helloInterval, [this] { sendHello(); });
}

void
Olsr::sendTc()
{
  purge();
  std::set<NodeId> selectors = mprSelectors();
  if (selectors != m_advertised) {
    ++m_ansn;
    m_advertised = selectors;
  }
  OlsrTc tc;
  tc.originator = m_self;
  tc.messageSeq = ++m_messageSeq;
  tc.ansn = m_ansn;
  tc.selectors.assign(selectors.begin(), selectors.end());
  m_seen.insert({m_self, tc.messageSeq});
  m_sim.broadcastControl(m_self, std::move(tc));
  ++m_tcsOriginated;
  m_sim.scheduleTimer(m_params.tcInterval, [this] { sendTc(); });
}

void
Olsr::receiveControl(const Packet& pkt, NodeId from)
{
  const Message& m = *pkt.message;
  if (auto* hello = std::get_if<OlsrHello>(&m))
    onHello(*hello, from);
  else if (auto* tc = std::get_if<OlsrTc>(&m))
    onTc(*tc, from);
}

void
Olsr::onHello(const OlsrHello& h, NodeId from)
{
  SimTime now = m_sim.now();
  SimTime until = now + m_params.neighborHoldTime;
  bool wasSymmetric = isSymmetric(from);

  Link& link = m_links[from];
  link.heardUntil = until;
  const OlsrHelloEntry* mine = nullptr;
  for (const auto& e : h.neighbors)
    if (e.neighbor == m_self)
      mine = &e;
  if (mine)
    link.symUntil = until;
  bool symmetric = link.symUntil > now;

  bool changed = symmetric != wasSymmetric;
  if (symmetric) {
    std::map<NodeId, SimTime> reach;
    for (const auto& e : h.neighbors)
      if (e.neighbor != m_self && e.code != OlsrLinkCode::Asymmetric)
        reach[e.neighbor] = until;
    auto& old = m_twoHop[from];
    bool same = old.size() == reach.size() &&
                std::equal(old.begin(), old.end(), reach.begin(),
                           [](const auto& a, const auto& b) { return a.first == b.first; });
    changed |= !same;
    old = std::move(reach);
    if (old.empty())
      m_twoHop.erase(from);

    if (mine && mine->code == OlsrLinkCode::Mpr)
      m_selectors[from] = until;
    else
      m_selectors.erase(from);
  } else {
    changed |= m_twoHop.erase(from) > 0;
    m_selectors.erase(from);
  }
  if (changed)
    neighborhoodChanged();
}

void
Olsr::onTc(const OlsrTc& tc, NodeId from)
{
  if (!isSymmetric(from) || tc.originator == m_self)
    return;
  if (!m_seen.insert({tc.originator, tc.messageSeq}).second)
    return;

  auto it = m_topology.find(tc.originator);
  if (it == m_topology.end() || !seqNewer(it->second.ansn, tc.ansn)) {
    std::set<NodeId> selectors(tc.selectors.begin(), tc.selectors.end());
    Topology& t = m_topology[tc.originator];
    if (it == m_topology.end() || t.selectors != selectors)
      m_dirty = true;
    t.ansn = tc.ansn;
    t.selectors = std::move(selectors);
    t.until = m_sim.now() + m_params.topologyHoldTime;
  }

  auto sel = m_selectors.find(from);
  if (sel != m_selectors.end() && sel->second > m_sim.now() && tc.hopLimit > 1) {
    OlsrTc relay = tc;
    relay.hopLimit = tc.hopLimit - 1;
    m_sim.broadcastControl(m_self, std::move(relay));
    ++m_tcsForwarded;
  }
}

void
Olsr::computeRoutes() const
{
  if (!m_dirty)
    return;
  m_dirty = false;
  SimTime now = m_sim.now();
  std::map<NodeId, RouteView> routes;

  std::map<NodeId, NodeId> frontier; // node -> next hop
  for (NodeId n : symmetricNeighbors()) {
    frontier[n] = n;
    routes[n] = {n, 1};
  }
  std::uint32_t hops = 1;
  while (!frontier.empty()) {
    std::map<NodeId, NodeId> next;
    auto reach = [&](NodeId v, NodeId via) {
      if (v == m_self || routes.count(v))
        return;
      auto [it, fresh] = next.emplace(v, via);
      if (!fresh)
        it->second = std::min(it->second, via);
    };
    for (const auto& [u, via] : frontier) {
      if (hops == 1) {
        auto th = m_twoHop.find(u);
        if (th != m_twoHop.end())
          for (const auto& [v, until] : th->second)
            if (until > now)
              reach(v, via);
      }
      auto topo = m_topology.find(u);
      if (topo != m_topology.end() && topo->second.until > now)
        for (NodeId v : topo->second.selectors)
          reach(v, via);
    }
    ++hops;
    for (const auto& [v, via] : next)
      routes[v] = {via, hops};
    frontier = std::move(next);
  }

  for (const auto& [dst, r] : routes) {
    auto old = m_routes.find(dst);
    if (old == m_routes.end() || !(old->second == r))
      m_sim.noteRoute(m_self, dst, r);
  }
  for (const auto& [dst, r] : m_routes)
    if (!routes.count(dst))
      m_sim.noteRoute(m_self, dst, std::nullopt);
  m_routes = std::move(routes);
}

std::map<NodeId, RouteView>
Olsr::routingTable() const
{
  computeRoutes();
  return m_routes;
}

void
Olsr::routeData(Packet pkt, std::optional<NodeId>)
{
  computeRoutes();
  auto it = m_routes.find(pkt.destination);
  if (it == m_routes.end()) {
    m_sim.dropData(m_self, pkt, DropReason::NoRoute);
    return;
  }
  if (m_sim.transmitData(m_self, it->second.nextHop, pkt) == TxResult::LinkBroken)
    m_sim.dropData(m_self, pkt, DropReason::LinkBroken);
}

} // namespace vanet
