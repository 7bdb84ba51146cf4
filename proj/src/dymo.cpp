#include "vanet/dymo.hpp"

#include "vanet/simulator.hpp"

#include <algorithm>

namespace vanet {

Dymo::Dymo(Simulator& sim, NodeId self, DymoParams params)
  : RoutingProtocol(sim, self)
  , m_params(params)
{
}

void
Dymo::start()
{
}

DymoRoute*
Dymo::validRoute(NodeId dst)
{
  auto it = m_routes.find(dst);
  if (it == m_routes.end() || !it->second.valid || it->second.expires <= m_sim.now())
    return nullptr;
  return &it->second;
}

const DymoRoute*
Dymo::validRoute(NodeId dst) const
{
  auto it = m_routes.find(dst);
  if (it == m_routes.end() || !it->second.valid || it->second.expires <= m_sim.now())
    return nullptr;
  return &it->second;
}

void
Dymo::refresh(DymoRoute& r)
{
  r.expires = std::max(r.expires, m_sim.now() + m_params.routeLifetime);
}

bool
Dymo::offer(NodeId dst, NodeId nextHop, std::uint32_t hops, std::uint32_t seq)
{
  if (dst == m_self)
    return false;
  DymoRoute* cur = validRoute(dst);
  if (cur) {
    bool better = seqNewer(seq, cur->seq) || (seq == cur->seq && hops < cur->hops);
    if (!better) {
      if (seq == cur->seq && nextHop == cur->nextHop && hops == cur->hops)
        refresh(*cur);
      return false;
    }
  }
  DymoRoute& r = m_routes[dst];
  bool moved = !cur || r.nextHop != nextHop || r.hops != hops;
  r.nextHop = nextHop;
  r.hops = hops;
  r.seq = seq;
  r.valid = true;
  r.expires = m_sim.now() + m_params.routeLifetime;
  if (moved)
    m_sim.noteRoute(m_self, dst, RouteView{nextHop, hops});
  return true;
}

// Data plane ----------------------------------------------------------------

void
Dymo::routeData(Packet pkt, std::optional<NodeId> previousHop)
{
  forward(std::move(pkt), previousHop);
}

void
Dymo::forward(Packet pkt, std::optional<NodeId> previousHop)
{
  NodeId dst = pkt.destination;
  DymoRoute* r = validRoute(dst);
  if (!r) {
    if (previousHop) {
      auto it = m_routes.find(dst);
      std::uint32_t seq = it == m_routes.end() ? 0 : it->second.seq;
      m_sim.dropData(m_self, pkt, DropReason::NoRoute);
      // Stragglers behind a just-reported break need no second report.
      auto last = m_rerrAt.find(dst);
      if (last == m_rerrAt.end() || m_sim.now() - last->second >= kRerrHoldDown)
        sendRerr({{dst, seq}});
    } else {
      buffer(std::move(pkt));
      discover(dst);
    }
    return;
  }
  refresh(*r);
  if (previousHop)
    r->precursors.insert(*previousHop);
  NodeId next = r->nextHop;
  if (DymoRoute* back = validRoute(pkt.source))
    refresh(*back);

  if (m_sim.transmitData(m_self, next, pkt) != TxResult::LinkBroken)
    return;
  linkBroken(next);
  if (previousHop) {
    m_sim.dropData(m_self, pkt, DropReason::LinkBroken);
  } else {
    buffer(std::move(pkt));
    discover(dst);
  }
}

void
Dymo::buffer(Packet pkt)
{
  if (m_buffer.size() >= m_params.bufferCapacity) {
    m_sim.dropData(m_self, pkt, DropReason::BufferOverflow);
    return;
  }
  m_buffer.push_back(std::move(pkt));
}

// Discovery -----------------------------------------------------------------

void
Dymo::discover(NodeId target)
{
  if (m_discoveries.count(target))
    return;
  Discovery& d = m_discoveries[target];
  d.ttl = m_params.ersInitialTtl;
  d.round = 1;
  sendRound(target, d);
}

void
Dymo::sendRound(NodeId target, Discovery& d)
{
  ++m_seq;
  DymoRreq rreq;
  rreq.origin = m_self;
  rreq.originSeq = m_seq;
  rreq.target = target;
  auto known = m_routes.find(target);
  rreq.targetSeq = known == m_routes.end() ? 0 : known->second.seq;
  rreq.hopCount = 0;
  rreq.hopLimit = d.ttl;
  m_seen.insert({m_self, m_seq});
  m_rounds.push_back({m_sim.now(), target, d.ttl, d.round});
  m_sim.broadcastControl(m_self, rreq);

  d.token = m_nextToken++;
  m_sim.scheduleTimer(m_params.rreqWaitTime,
                      [this, target, token = d.token] { roundExpired(target, token); });
}

void
Dymo::roundExpired(NodeId target, std::uint64_t token)
{
  auto it = m_discoveries.find(target);
  if (it == m_discoveries.end() || it->second.token != token)
    return;
  if (validRoute(target)) {
    flush(target);
    return;
  }
  Discovery& d = it->second;
  // A ring already at the network diameter is the last one.
  if (d.round < m_params.rreqTries && d.ttl < m_params.netDiameter) {
    d.ttl = std::min(d.ttl + m_params.ersIncrement, m_params.netDiameter);
    ++d.round;
    sendRound(target, d);
    return;
  }
  m_discoveries.erase(it);
  ++m_failed;
  std::deque<Packet> keep;
  for (auto& p : m_buffer) {
    if (p.destination == target)
      m_sim.dropData(m_self, p, DropReason::DiscoveryFailed);
    else
      keep.push_back(std::move(p));
  }
  m_buffer = std::move(keep);
}

void
Dymo::flush(NodeId target)
{
  m_discoveries.erase(target);
  std::vector<Packet> ready;
  std::deque<Packet> keep;
  for (auto& p : m_buffer) {
    if (p.destination == target)
      ready.push_back(std::move(p));
    else
      keep.push_back(std::move(p));
  }
  m_buffer = std::move(keep);
  for (auto& p : ready)
    forward(std::move(p), std::nullopt);
}

// Route errors --------------------------------------------------------------

void
Dymo::linkBroken(NodeId nextHop)
{
  std::vector<DymoUnreachable> lost;
  SimTime now = m_sim.now();
  for (auto& [dst, r] : m_routes) {
    if (!r.valid || r.expires <= now || r.nextHop != nextHop)
      continue;
    r.valid = false;
    m_sim.noteRoute(m_self, dst, std::nullopt);
    if (!r.precursors.empty())
      lost.push_back({dst, r.seq});
    r.precursors.clear();
  }
  if (!lost.empty())
    sendRerr(std::move(lost));
}

void
Dymo::sendRerr(std::vector<DymoUnreachable> list)
{
  for (const auto& u : list)
    m_rerrAt[u.destination] = m_sim.now();
  ++m_rerrSent;
  m_sim.broadcastControl(m_self, DymoRerr{std::move(list)});
}

// Control plane -------------------------------------------------------------

void
Dymo::receiveControl(const Packet& pkt, NodeId from)
{
  const Message& m = *pkt.message;
  if (auto* rreq = std::get_if<DymoRreq>(&m))
    onRreq(*rreq, from);
  else if (auto* rrep = std::get_if<DymoRrep>(&m))
    onRrep(*rrep, from);
  else if (auto* rerr = std::get_if<DymoRerr>(&m))
    onRerr(*rerr, from);
}

void
Dymo::onRreq(const DymoRreq& m, NodeId from)
{
  if (m.origin == m_self || !m_seen.insert({m.origin, m.originSeq}).second)
    return;
  offer(m.origin, from, m.hopCount + 1, m.originSeq);

  if (m.target == m_self) {
    if (seqNewer(m.targetSeq, m_seq))
      m_seq = m.targetSeq;
    ++m_seq;
    m_sim.unicastControl(m_self, from, DymoRrep{m.origin, m_self, m_seq, 0});
    return;
  }
  if (DymoRoute* r = validRoute(m.target);
      r && (m.targetSeq == 0 || !seqNewer(m.targetSeq, r->seq))) {
    if (m_sim.unicastControl(m_self, from, DymoRrep{m.origin, m.target, r->seq, r->hops})) {
      r->precursors.insert(from);
      if (DymoRoute* back = validRoute(m.origin))
        back->precursors.insert(r->nextHop);
    }
    return;
  }
  if (m.hopLimit > 1) {
    DymoRreq next = m;
    next.hopCount = m.hopCount + 1;
    next.hopLimit = m.hopLimit - 1;
    m_sim.broadcastControl(m_self, next);
  }
}

void
Dymo::onRrep(const DymoRrep& m, NodeId from)
{
  offer(m.routeTarget, from, m.hopCount + 1, m.targetSeq);
  if (m.destination == m_self) {
    if (m_discoveries.count(m.routeTarget) && validRoute(m.routeTarget))
      flush(m.routeTarget);
    return;
  }
  DymoRoute* back = validRoute(m.destination);
  if (!back)
    return;
  NodeId up = back->nextHop;
  if (m_sim.unicastControl(m_self, up,
                           DymoRrep{m.destination, m.routeTarget, m.targetSeq, m.hopCount + 1})) {
    if (DymoRoute* fwd = validRoute(m.routeTarget))
      fwd->precursors.insert(up);
    back->precursors.insert(from);
  }
}

void
Dymo::onRerr(const DymoRerr& m, NodeId from)
{
  std::vector<DymoUnreachable> lost;
  for (const auto& u : m.unreachable) {
    DymoRoute* r = validRoute(u.destination);
    if (!r || r->nextHop != from)
      continue;
    r->valid = false;
    m_sim.noteRoute(m_self, u.destination, std::nullopt);
    if (!r->precursors.empty())
      lost.push_back({u.destination, r->seq});
    r->precursors.clear();
  }
  if (!lost.empty())
    sendRerr(std::move(lost));
}

std::map<NodeId, RouteView>
Dymo::routingTable() const
{
  std::map<NodeId, RouteView> out;
  for (const auto& [dst, r] : m_routes)
    if (validRoute(dst))
      out[dst] = {r.nextHop, r.hops};
  return out;
}

} // namespace vanet
