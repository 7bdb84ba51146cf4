#include "fixtures.hpp"
#include "oracles.hpp"

#include "vanet/dsdv.hpp"
#include "vanet/dymo.hpp"
#include "vanet/mpr.hpp"
#include "vanet/olsr.hpp"

#include <doctest.h>

#include <random>

using namespace vanet;
using namespace std::chrono_literals;

namespace {

std::vector<DsdvAdvert>
one(NodeId dst, std::uint32_t metric, std::uint32_t seq)
{
  return {{dst, metric, seq}};
}

void
checkAgainstBfs(const Simulator& sim, const std::vector<Position>& pos, double range)
{
  CHECK(fixture::routeErrors(sim, pos, range) == 0);
}

std::vector<Position>
scatter(std::size_t n, double side, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Position> pos;
  for (std::size_t i = 0; i < n; ++i)
    pos.push_back({u(rng), u(rng)});
  return pos;
}

std::uint64_t
controlCount(const EventLog& log)
{
  return fixture::countEvents(log, LogEvent::Send, PacketClass::Control);
}

/// Sends one packet from @p src to each of @p dsts every 250 ms in [from, until).
void
pump(Simulator& sim, NodeId src, std::vector<NodeId> dsts, SimTime from, SimTime until)
{
  std::function<void()> tick = [&sim, src, dsts, until, &tick] {
    for (NodeId d : dsts)
      sim.originateData(src, d);
    if (sim.now() + 250ms < until)
      sim.scheduleTimer(250ms, tick);
  };
  sim.scheduleTimer(from - sim.now(), tick);
  sim.runUntil(until + 1s);
}

} // namespace

// DSDV ----------------------------------------------------------------------

TEST_CASE("dsdv table: first route, stale numbers, equal numbers")
{
  DsdvTable t(0, DsdvParams{});
  auto changed = t.process(one(5, 2, 10), 1, 1s);
  CHECK(changed == std::vector<NodeId>{5});
  REQUIRE(t.find(5));
  CHECK(t.find(5)->nextHop == 1);
  CHECK(t.find(5)->metric == 3);
  CHECK(t.find(5)->seq == 10);

  t.process(one(5, 0, 12), 1, 2s);
  CHECK(t.find(5)->seq == 12);
  CHECK(t.process(one(5, 0, 10), 2, 3s).empty());
  CHECK(t.find(5)->seq == 12);
  CHECK(t.find(5)->nextHop == 1);

  // equal sequence: only a strictly shorter path from another neighbor wins
  DsdvTable u(0, DsdvParams{});
  u.process(one(3, 4, 10), 7, 1s);
  CHECK(u.find(3)->metric == 5);
  CHECK(u.process(one(3, 4, 10), 1, 2s).empty());
  CHECK(u.find(3)->nextHop == 7);
  u.process(one(3, 2, 10), 1, 3s);
  CHECK(u.find(3)->nextHop == 1);
  CHECK(u.find(3)->metric == 3);
}

TEST_CASE("dsdv table: breaks and self defence")
{
  DsdvTable t(0, DsdvParams{});
  t.process(one(4, 1, 20), 2, 1s);
  t.process(one(5, 0, 8), 2, 1s);
  t.process(one(6, 0, 8), 3, 1s);
  auto lost = t.breakVia(2, 2s);
  CHECK(lost == std::vector<NodeId>{4, 5});
  CHECK(t.find(4)->broken());
  CHECK(t.find(4)->seq % 2 == 1);
  CHECK_FALSE(t.find(6)->broken());
  // a broken route takes any fresh offer
  t.process(one(4, 3, 22), 3, 3s);
  CHECK(t.find(4)->metric == 4);

  t.purge(100s, 45s);
  CHECK(t.find(5) == nullptr);

  t.fullDump();
  auto before = t.ownSeq();
  t.process(one(0, kDsdvInfinity, before + 1), 3, 5s);
  CHECK(seqNewer(t.ownSeq(), before + 1));
  CHECK(t.ownSeq() % 2 == 0);
}

TEST_CASE("dsdv table: longer route with a newer number waits while the old one works")
{
  DsdvTable t(0, DsdvParams{});
  t.process(one(9, 1, 10), 1, 1s);
  t.process(one(9, 3, 12), 2, 2s);
  CHECK(t.find(9)->nextHop == 1);
  REQUIRE(t.find(9)->pending);
  CHECK(t.find(9)->pending->nextHop == 2);
  t.breakVia(1, 3s);
  CHECK(t.find(9)->nextHop == 2);
  CHECK(t.find(9)->metric == 4);
}

TEST_CASE("dsdv: a four-node line converges to hop distances")
{
  auto pos = fixture::line(4, 250);
  Simulator sim(fixture::staticScenario(pos, ProtocolKind::Dsdv));
  sim.runUntil(75s);
  checkAgainstBfs(sim, pos, 300);
  auto& d = dynamic_cast<const Dsdv&>(sim.protocol(0));
  CHECK(d.table().find(3)->metric == 3);
}

TEST_CASE("dsdv: 40 full dumps per node in 600 s")
{
  Simulator sim(fixture::staticScenario({{0, 0}, {100, 0}}, ProtocolKind::Dsdv));
  auto res = sim.run();
  for (NodeId n : {0u, 1u}) {
    CHECK(dynamic_cast<const Dsdv&>(sim.protocol(n)).fullDumps() == 40);
    std::size_t sends = 0;
    for (const auto& r : res.log.records)
      sends += r.event == LogEvent::Send && r.node == n;
    CHECK(sends >= 40);
  }
}

TEST_CASE("dsdv: converged tables match breadth-first search")
{
  auto lattice = oracle::latticePositions(5, 200);
  {
    Simulator sim(fixture::staticScenario(lattice, ProtocolKind::Dsdv));
    sim.runUntil(75s);
    checkAgainstBfs(sim, lattice, 300);
  }
  for (std::uint64_t seed : {1, 2, 3}) {
    auto pos = scatter(20, 1200, seed);
    auto sc = fixture::staticScenario(pos, ProtocolKind::Dsdv);
    sc.seed = seed;
    Simulator sim(std::move(sc));
    sim.runUntil(75s);
    checkAgainstBfs(sim, pos, 300);
  }
}

// MPR -----------------------------------------------------------------------

TEST_CASE("mpr examples")
{
  CHECK(selectMprs(0, {1, 2, 3}, {{1, {0}}, {2, {0}}, {3, {0}}}).empty());
  CHECK(selectMprs(0, {1}, {{1, {0, 2}}}) == std::set<NodeId>{1});
  // 1 alone reaches 4; 2 and 3 both reach 5, lowest id wins
  CHECK(selectMprs(0, {1, 2, 3}, {{1, {4}}, {2, {5}}, {3, {5}}}) == std::set<NodeId>{1, 2});
  // a neighbor's neighbor that is itself a neighbor is no target
  CHECK(selectMprs(0, {1, 2}, {{1, {2}}, {2, {1}}}).empty());
}

TEST_CASE("mpr sets cover every strict two-hop node")
{
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 2 + rng() % 29;
    double p = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
    oracle::Graph g;
    for (NodeId i = 0; i < n; ++i)
      g[i];
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j)
        if (std::bernoulli_distribution(p)(rng)) {
          g[i].insert(j);
          g[j].insert(i);
        }
    for (NodeId self = 0; self < n; ++self) {
      TwoHopMap two;
      for (NodeId nb : g[self])
        two[nb] = g[nb];
      auto mprs = selectMprs(self, g[self], two);
      auto dist = oracle::bfsHops(g, self);
      for (NodeId m : mprs)
        CHECK(g[self].count(m));
      for (auto [node, hops] : dist) {
        if (hops != 2)
          continue;
        bool covered = false;
        for (NodeId m : mprs)
          covered = covered || g[m].count(node);
        CHECK(covered);
      }
    }
  }
}

// DYMO ----------------------------------------------------------------------

TEST_CASE("dymo: a neighbor is found on the first ring")
{
  Simulator sim(fixture::staticScenario({{0, 0}, {200, 0}}, ProtocolKind::Dymo, Profile::Default, 10));
  sim.scheduleTimer(1s, [&] { sim.originateData(0, 1); });
  auto res = sim.run();
  auto& d = dynamic_cast<const Dymo&>(sim.protocol(0));
  REQUIRE(d.rreqRounds().size() == 1);
  CHECK(d.rreqRounds()[0].ttl == 1);
  CHECK(sim.controlTransmissions<DymoRreq>(0) == 1);
  CHECK(sim.controlTransmissions<DymoRrep>(1) == 1);
  CHECK(controlCount(res.log) == 2);
  CHECK(fixture::countEvents(res.log, LogEvent::Deliver, PacketClass::Data) == 1);
}

TEST_CASE("dymo: three hops away succeeds on the second ring")
{
  Simulator sim(fixture::staticScenario(fixture::line(4, 250), ProtocolKind::Dymo,
                                        Profile::Default, 20));
  sim.scheduleTimer(1s, [&] { sim.originateData(0, 3); });
  auto res = sim.run();
  auto& d = dynamic_cast<const Dymo&>(sim.protocol(0));
  REQUIRE(d.rreqRounds().size() == 2);
  CHECK(d.rreqRounds()[0].ttl == 1);
  CHECK(d.rreqRounds()[1].ttl == 3);
  CHECK(d.rreqRounds()[1].time - d.rreqRounds()[0].time == 1000ms);
  CHECK(d.routes().at(3).hops == 3);
  CHECK(fixture::countEvents(res.log, LogEvent::Deliver, PacketClass::Data) == 1);
  CHECK(d.discoveriesFailed() == 0);
}

TEST_CASE("dymo: unreachable target, three rounds then failure")
{
  for (auto profile : {Profile::Default, Profile::Mod}) {
    Simulator sim(fixture::staticScenario({{0, 0}, {1000, 0}}, ProtocolKind::Dymo, profile, 20));
    sim.scheduleTimer(1s, [&] {
      sim.originateData(0, 1);
      sim.originateData(0, 1);
    });
    auto res = sim.run();
    auto& d = dynamic_cast<const Dymo&>(sim.protocol(0));
    auto wait = dymoProfile(profile).rreqWaitTime;
    REQUIRE(d.rreqRounds().size() == 3);
    CHECK(d.rreqRounds()[0].ttl == 1);
    CHECK(d.rreqRounds()[1].ttl == 3);
    CHECK(d.rreqRounds()[2].ttl == 5);
    CHECK(d.rreqRounds()[2].time - d.rreqRounds()[1].time == wait);
    CHECK(d.discoveriesFailed() == 1);
    CHECK(d.bufferedData() == 0);
    std::size_t failed = 0;
    for (const auto& r : res.log.records)
      failed += r.event == LogEvent::Drop && r.reason == DropReason::DiscoveryFailed;
    CHECK(failed == 2);
    CHECK(res.log.records.back().time == 1s + 3 * wait);
  }
}

TEST_CASE("dymo: rings stop at the network diameter")
{
  auto sc = fixture::staticScenario({{0, 0}, {1000, 0}}, ProtocolKind::Dymo, Profile::Default, 20);
  sc.protocol.dymo.netDiameter = 4;
  sc.protocol.dymo.rreqTries = 5;
  Simulator sim(std::move(sc));
  sim.scheduleTimer(1s, [&] { sim.originateData(0, 1); });
  sim.run();
  auto& d = dynamic_cast<const Dymo&>(sim.protocol(0));
  REQUIRE(d.rreqRounds().size() == 3);
  CHECK(d.rreqRounds()[2].ttl == 4);
}

TEST_CASE("dymo: ring TTLs rise strictly within each discovery")
{
  MobilityConfig mc;
  mc.nodeCount = 40;
  mc.duration = 300;
  mc.seed = 11;
  Scenario sc;
  sc.traces = generateTraces(buildGrid(3, 3, 1000), mc);
  sc.protocol = ProtocolSetup::make(ProtocolKind::Dymo, Profile::Default);
  sc.traffic.sessions = 10;
  sc.duration = 300s;
  Simulator sim(std::move(sc));
  sim.run();
  std::size_t rounds = 0;
  for (NodeId n = 0; n < 40; ++n) {
    // discoveries for different targets interleave; follow each target
    std::map<NodeId, RreqRound> last;
    for (const auto& r : dynamic_cast<const Dymo&>(sim.protocol(n)).rreqRounds()) {
      ++rounds;
      CHECK(r.ttl <= 10);
      auto prev = last.find(r.target);
      if (r.round > 1) {
        REQUIRE(prev != last.end());
        CHECK(r.round == prev->second.round + 1);
        CHECK(r.ttl > prev->second.ttl);
      } else {
        CHECK(r.ttl == 1);
      }
      last[r.target] = r;
    }
  }
  CHECK(rounds > 10);
}

TEST_CASE("dymo: one RERR for three flows over a broken link")
{
  // S - A - B, with B's side reaching D1..D3; B moves towards them at
  // t = 40 s, leaving A's range half a second later.
  std::vector<Position> pos{{0, 0}, {250, 0}, {500, 0}, {750, 0}, {700, 150}, {700, -150}};
  auto sc = fixture::staticScenario(pos, ProtocolKind::Dymo, Profile::Default, 60);
  sc.traces[2] = fixture::driveAway(2, pos[2], {100, 0}, 40, 60);
  Simulator sim(std::move(sc));
  pump(sim, 0, {3, 4, 5}, 20s, 42s);
  auto& s = dynamic_cast<const Dymo&>(sim.protocol(0));
  auto& a = dynamic_cast<const Dymo&>(sim.protocol(1));
  CHECK(a.rerrSent() == 1);
  for (NodeId d : {3u, 4u, 5u})
    CHECK_FALSE(s.routes().at(d).valid);
  CHECK(s.rerrSent() == 0);
}

TEST_CASE("dymo: a break on a route nobody else uses sends no RERR")
{
  std::vector<Position> pos{{0, 0}, {250, 0}, {500, 0}};
  auto sc = fixture::staticScenario(pos, ProtocolKind::Dymo, Profile::Default, 60);
  sc.traces[1] = fixture::driveAway(1, pos[1], {0, 100}, 40, 60);
  Simulator sim(std::move(sc));
  pump(sim, 0, {2}, 20s, 42s);
  auto& s = dynamic_cast<const Dymo&>(sim.protocol(0));
  std::size_t total = 0;
  for (NodeId n = 0; n < 3; ++n)
    total += dynamic_cast<const Dymo&>(sim.protocol(n)).rerrSent();
  CHECK(total == 0);
  // the source went back to discovery after the break
  REQUIRE(s.rreqRounds().size() >= 2);
  CHECK(s.rreqRounds().back().time > 40s);
  CHECK(s.rreqRounds().back().target == 2);
}

// OLSR ----------------------------------------------------------------------

TEST_CASE("olsr: Hello and TC cadence per profile")
{
  auto pos = oracle::latticePositions(3, 200);
  for (auto [profile, hellos, tcs] :
       {std::tuple{Profile::Default, 300, 120}, std::tuple{Profile::Mod, 600, 200}}) {
    Simulator sim(fixture::staticScenario(pos, ProtocolKind::Olsr, profile));
    sim.run();
    for (NodeId n = 0; n < pos.size(); ++n) {
      auto& o = dynamic_cast<const Olsr&>(sim.protocol(n));
      CHECK(std::abs(static_cast<int>(sim.controlTransmissions<OlsrHello>(n)) - hellos) <= 1);
      CHECK(std::abs(static_cast<int>(o.tcsOriginated()) - tcs) <= 1);
      CHECK(o.hellosSent() == sim.controlTransmissions<OlsrHello>(n));
    }
  }
}

TEST_CASE("olsr: an isolated node says Hello and forwards nothing")
{
  Simulator sim(fixture::staticScenario({{0, 0}, {2000, 0}}, ProtocolKind::Olsr));
  sim.run();
  auto& o = dynamic_cast<const Olsr&>(sim.protocol(0));
  CHECK(o.hellosSent() >= 299);
  CHECK(o.tcsForwarded() == 0);
  CHECK(o.symmetricNeighbors().empty());
  CHECK(o.mprs().empty());
  CHECK(o.routingTable().empty());
}

TEST_CASE("olsr: converged tables match breadth-first search")
{
  auto lattice = oracle::latticePositions(5, 200);
  for (auto [profile, at] : {std::pair{Profile::Default, 15s}, std::pair{Profile::Mod, 9s}}) {
    Simulator sim(fixture::staticScenario(lattice, ProtocolKind::Olsr, profile));
    sim.runUntil(at);
    checkAgainstBfs(sim, lattice, 300);
  }
  for (std::uint64_t seed : {4, 5, 6}) {
    auto pos = scatter(20, 1200, seed);
    auto sc = fixture::staticScenario(pos, ProtocolKind::Olsr);
    sc.seed = seed;
    Simulator sim(std::move(sc));
    sim.runUntil(60s);
    checkAgainstBfs(sim, pos, 300);
  }
}

TEST_CASE("olsr: MPR selections agree across neighbors")
{
  auto pos = scatter(25, 1000, 8);
  Simulator sim(fixture::staticScenario(pos, ProtocolKind::Olsr));
  sim.runUntil(30s);
  auto g = oracle::diskGraph(pos, 300);
  for (NodeId n = 0; n < pos.size(); ++n) {
    auto& o = dynamic_cast<const Olsr&>(sim.protocol(n));
    CHECK(o.symmetricNeighbors() == g[n]);
    for (NodeId m : o.mprs())
      CHECK(dynamic_cast<const Olsr&>(sim.protocol(m)).mprSelectors().count(n));
  }
}

// Control load ---------------------------------------------------------------

TEST_CASE("control load: proactive flat, reactive non-decreasing in sessions")
{
  auto lattice = oracle::latticePositions(5, 200);
  std::map<std::string, std::vector<std::uint64_t>> counts;
  for (int sessions : {0, 6, 12, 18, 24})
    for (auto [kind, profile] : {std::pair{ProtocolKind::Dsdv, Profile::Default},
                                 std::pair{ProtocolKind::Olsr, Profile::Default},
                                 std::pair{ProtocolKind::Olsr, Profile::Mod},
                                 std::pair{ProtocolKind::Dymo, Profile::Default}}) {
      auto sc = fixture::staticScenario(lattice, kind, profile, 200);
      sc.traffic.sessions = sessions;
      sc.seed = 4;
      counts[variantLabel(kind, profile)].push_back(controlCount(Simulator(std::move(sc)).run().log));
    }
  for (const char* p : {"DSDV", "OLSR", "MOD-OLSR"}) {
    INFO(p);
    const auto& c = counts[p];
    CHECK(std::adjacent_find(c.begin(), c.end(), std::not_equal_to<>()) == c.end());
  }
  const auto& d = counts["DYMO"];
  CHECK(d.front() == 0);
  CHECK(std::is_sorted(d.begin(), d.end()));
}

// Profiles -------------------------------------------------------------------

TEST_CASE("profile values")
{
  CHECK(dymoProfile(Profile::Default).netDiameter == 10);
  CHECK(dymoProfile(Profile::Default).rreqWaitTime == 1000ms);
  CHECK(dymoProfile(Profile::Mod).netDiameter == 30);
  CHECK(dymoProfile(Profile::Mod).rreqWaitTime == 600ms);
  CHECK(olsrProfile(Profile::Default).helloInterval == 2s);
  CHECK(olsrProfile(Profile::Default).tcInterval == 5s);
  CHECK(olsrProfile(Profile::Mod).helloInterval == 1s);
  CHECK(olsrProfile(Profile::Mod).tcInterval == 3s);
  CHECK(olsrProfile(Profile::Mod).topologyHoldTime == 9s);
  CHECK_THROWS_AS(dsdvProfile(Profile::Mod), DomainError);

  OlsrParams o;
  o.neighborHoldTime = 5s;
  CHECK_THROWS_AS(o.validate(), DomainError);
  DymoParams d;
  d.ersInitialTtl = 11;
  CHECK_THROWS_AS(d.validate(), DomainError);
  d.ersInitialTtl = 0;
  CHECK_THROWS_AS(d.validate(), DomainError);
  DsdvParams s;
  s.settlingTime = 0s;
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK(variantLabel(ProtocolKind::Dymo, Profile::Mod) == "MOD-DYMO");
}
