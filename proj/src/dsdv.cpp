#include "vanet/dsdv.hpp"

#include "vanet/simulator.hpp"

#include <algorithm>

namespace vanet {

// Table ---------------------------------------------------------------------

DsdvTable::DsdvTable(NodeId self, DsdvParams params)
  : m_self(self)
  , m_params(params)
{
}

const DsdvRoute*
DsdvTable::find(NodeId dst) const
{
  auto it = m_routes.find(dst);
  return it == m_routes.end() ? nullptr : &it->second;
}

void
DsdvTable::flag(DsdvRoute& r, SimTime at)
{
  if (!r.advertise || at < r.advertiseAt) {
    r.advertise = true;
    r.advertiseAt = at;
  }
}

void
DsdvTable::adopt(DsdvRoute& r, const DsdvCandidate& c, SimTime now)
{
  r.nextHop = c.nextHop;
  r.metric = c.metric;
  r.seq = c.seq;
  r.heardAt = now;
  if (r.broken())
    r.brokenAt = now;
  if (r.pending && !seqNewer(r.pending->seq, r.seq))
    r.pending.reset();
}

std::vector<NodeId>
DsdvTable::process(std::span<const DsdvAdvert> adverts, NodeId from, SimTime now)
{
  std::vector<NodeId> changed;
  for (const auto& a : adverts) {
    if (a.destination == m_self) {
      // Someone declared us unreachable with a newer (odd) number: reassert.
      if (a.metric == kDsdvInfinity && seqNewer(a.seq, m_seq)) {
        m_seq = a.seq + (a.seq % 2 == 0 ? 2 : 1);
        m_selfAdvertise = true;
      }
      continue;
    }
    std::uint32_t metric = a.metric == kDsdvInfinity ? kDsdvInfinity : a.metric + 1;
    DsdvCandidate c{from, metric, a.seq};

    auto it = m_routes.find(a.destination);
    if (it == m_routes.end()) {
      if (metric == kDsdvInfinity)
        continue;
      DsdvRoute& r = m_routes[a.destination];
      adopt(r, c, now);
      flag(r, now);
      changed.push_back(a.destination);
      continue;
    }

    DsdvRoute& r = it->second;
    if (from == r.nextHop && !seqNewer(r.seq, a.seq))
      r.heardAt = now;

    if (seqNewer(a.seq, r.seq)) {
      if (metric == kDsdvInfinity) {
        bool wasValid = !r.broken();
        adopt(r, c, now);
        if (wasValid) {
          flag(r, now);
          changed.push_back(a.destination);
        }
      } else if (r.broken() || from == r.nextHop || metric <= r.metric) {
        bool wasBroken = r.broken();
        bool moved = from != r.nextHop || metric != r.metric || wasBroken;
        bool worse = !wasBroken && metric > r.metric;
        adopt(r, c, now);
        if (moved) {
          flag(r, worse ? now + m_params.settlingTime : now);
          changed.push_back(a.destination);
        }
      } else if (!r.pending || seqNewer(a.seq, r.pending->seq) ||
                 (a.seq == r.pending->seq && metric < r.pending->metric)) {
        r.pending = c;
      }
    } else if (a.seq == r.seq) {
      if (metric < r.metric) {
        adopt(r, c, now);
        flag(r, now);
        changed.push_back(a.destination);
      } else if (from == r.nextHop && metric != r.metric) {
        bool worse = !r.broken() && metric > r.metric;
        adopt(r, c, now);
        flag(r, worse && metric != kDsdvInfinity ? now + m_params.settlingTime : now);
        changed.push_back(a.destination);
      }
    } else if (a.metric == kDsdvInfinity && !r.broken()) {
      // The neighbor still believes in an old break; tell it about our route.
      flag(r, now);
    }
  }
  return changed;
}

std::vector<NodeId>
DsdvTable::breakVia(NodeId nextHop, SimTime now)
{
  std::vector<NodeId> out;
  for (auto& [dst, r] : m_routes) {
    if (r.nextHop != nextHop || r.broken())
      continue;
    if (r.pending && r.pending->nextHop != nextHop) {
      adopt(r, *r.pending, now);
      r.pending.reset();
    } else {
      r.pending.reset();
      r.seq += r.seq % 2 == 0 ? 1 : 2;
      r.metric = kDsdvInfinity;
      r.brokenAt = now;
    }
    flag(r, now);
    out.push_back(dst);
  }
  return out;
}

std::vector<NodeId>
DsdvTable::promotePending(SimTime now)
{
  std::vector<NodeId> out;
  SimTime quiet = m_params.fullDumpInterval + m_params.settlingTime;
  for (auto& [dst, r] : m_routes) {
    if (!r.pending)
      continue;
    if (r.broken() || now - r.heardAt > quiet) {
      DsdvCandidate c = *r.pending;
      r.pending.reset();
      adopt(r, c, now);
      flag(r, now);
      out.push_back(dst);
    }
  }
  return out;
}

void
DsdvTable::purge(SimTime now, SimTime age)
{
  std::erase_if(m_routes, [&](const auto& kv) {
    return kv.second.broken() && now - kv.second.brokenAt > age;
  });
}

std::vector<DsdvAdvert>
DsdvTable::fullDump()
{
  m_seq += 2;
  m_selfAdvertise = false;
  std::vector<DsdvAdvert> out;
  out.reserve(m_routes.size() + 1);
  out.push_back({m_self, 0, m_seq});
  for (auto& [dst, r] : m_routes) {
    out.push_back({dst, r.metric, r.seq});
    r.advertise = false;
  }
  return out;
}

std::vector<DsdvAdvert>
DsdvTable::takeDue(SimTime now)
{
  std::vector<DsdvAdvert> out;
  if (m_selfAdvertise) {
    out.push_back({m_self, 0, m_seq});
    m_selfAdvertise = false;
  }
  for (auto& [dst, r] : m_routes) {
    if (r.advertise && r.advertiseAt <= now) {
      out.push_back({dst, r.metric, r.seq});
      r.advertise = false;
    }
  }
  return out;
}

std::optional<SimTime>
DsdvTable::nextDue() const
{
  std::optional<SimTime> due;
  if (m_selfAdvertise)
    due = SimTime::min();
  for (const auto& [dst, r] : m_routes)
    if (r.advertise && (!due || r.advertiseAt < *due))
      due = r.advertiseAt;
  return due;
}

// Agent ---------------------------------------------------------------------

Dsdv::Dsdv(Simulator& sim, NodeId self, DsdvParams params)
  : RoutingProtocol(sim, self)
  , m_params(params)
  , m_table(self, params)
{
}

void
Dsdv::start()
{
  auto& rng = m_sim.protocolRng(m_self);
  auto offset = SimTime(static_cast<std::int64_t>(
    rng.uniform01() * static_cast<double>(m_params.fullDumpInterval.count())));
  m_sim.scheduleTimer(offset, [this] { periodic(); });
}

void
Dsdv::periodic()
{
  SimTime now = m_sim.now();
  SimTime timeout = 3 * m_params.fullDumpInterval;
  std::vector<NodeId> lost;
  for (const auto& [n, heard] : m_neighborHeard)
    if (now - heard > timeout)
      lost.push_back(n);
  for (NodeId n : lost) {
    m_neighborHeard.erase(n);
    noteChanges(m_table.breakVia(n, now));
  }
  noteChanges(m_table.promotePending(now));
  m_table.purge(now, timeout);

  m_sim.broadcastControl(m_self, DsdvUpdate{true, m_table.fullDump()});
  ++m_fullDumps;
  m_sim.scheduleTimer(m_params.fullDumpInterval, [this] { periodic(); });
}

void
Dsdv::receiveControl(const Packet& pkt, NodeId from)
{
  const auto& update = pkt.as<DsdvUpdate>();
  SimTime now = m_sim.now();
  m_neighborHeard[from] = now;
  noteChanges(m_table.process(update.entries, from, now));
  noteChanges(m_table.promotePending(now));
  if (auto due = m_table.nextDue())
    requestTrigger(*due);
}

void
Dsdv::requestTrigger(SimTime at)
{
  SimTime now = m_sim.now();
  at = std::max({at, now, m_lastTriggered + m_params.triggeredMinInterval});
  if (m_nextTrigger && *m_nextTrigger <= at)
    return;
  m_nextTrigger = at;
  m_sim.scheduleTimer(at - now, [this, at] {
    if (m_nextTrigger != at)
      return;
    m_nextTrigger.reset();
    sendIncremental();
  });
}

void
Dsdv::sendIncremental()
{
  auto entries = m_table.takeDue(m_sim.now());
  if (!entries.empty()) {
    m_sim.broadcastControl(m_self, DsdvUpdate{false, std::move(entries)});
    m_lastTriggered = m_sim.now();
    ++m_incremental;
  }
  if (auto due = m_table.nextDue())
    requestTrigger(*due);
}

void
Dsdv::linkFailed(NodeId nextHop)
{
  m_neighborHeard.erase(nextHop);
  noteChanges(m_table.breakVia(nextHop, m_sim.now()));
  if (auto due = m_table.nextDue())
    requestTrigger(*due);
}

void
Dsdv::routeData(Packet pkt, std::optional<NodeId>)
{
  const DsdvRoute* r = m_table.find(pkt.destination);
  if (!r || r->broken()) {
    m_sim.dropData(m_self, pkt, DropReason::NoRoute);
    return;
  }
  NodeId next = r->nextHop;
  if (m_sim.transmitData(m_self, next, pkt) == TxResult::LinkBroken) {
    linkFailed(next);
    m_sim.dropData(m_self, pkt, DropReason::LinkBroken);
  }
}

std::map<NodeId, RouteView>
Dsdv::routingTable() const
{
  std::map<NodeId, RouteView> out;
  for (const auto& [dst, r] : m_table.routes())
    if (!r.broken())
      out[dst] = {r.nextHop, r.metric};
  return out;
}

void
Dsdv::noteChanges(const std::vector<NodeId>& dsts)
{
  for (NodeId d : dsts) {
    const DsdvRoute* r = m_table.find(d);
    if (r && !r->broken())
      m_sim.noteRoute(m_self, d, RouteView{r->nextHop, r->metric});
    else
      m_sim.noteRoute(m_self, d, std::nullopt);
  }
}

} // namespace vanet
