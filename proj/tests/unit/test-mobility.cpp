#include "vanet/mobility.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <tuple>

using namespace vanet;

namespace {

bool
atIntersection(const RoadGrid& g, const Position& p)
{
  double fx = p.x / g.spacing, fy = p.y / g.spacing;
  return std::abs(fx - std::round(fx)) * g.spacing < 1e-6 &&
         std::abs(fy - std::round(fy)) * g.spacing < 1e-6;
}

// Brute-force containment: is p on any of the explicitly enumerated segments?
bool
onSomeSegment(const RoadGrid& g, const Position& p, double tol)
{
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) {
      Position a = g.intersection(r, c);
      if (c + 1 < g.cols) {
        Position b = g.intersection(r, c + 1);
        if (std::abs(p.y - a.y) <= tol && p.x >= a.x - tol && p.x <= b.x + tol)
          return true;
      }
      if (r + 1 < g.rows) {
        Position b = g.intersection(r + 1, c);
        if (std::abs(p.x - a.x) <= tol && p.y >= a.y - tol && p.y <= b.y + tol)
          return true;
      }
    }
  return false;
}

} // namespace

TEST_SUITE("mobility")
{

TEST_CASE("buildGrid")
{
  RoadGrid g = buildGrid(3, 3, 2000);
  CHECK(g.intersectionCount() == 9);
  CHECK(g.segmentCount() == 12);
  CHECK(g.width() == 4000);
  CHECK(g.height() == 4000);

  RoadGrid small = buildGrid(2, 2, 100);
  CHECK(small.intersectionCount() == 4);
  CHECK(small.segmentCount() == 4);

  RoadGrid rect = buildGrid(5, 4, 1000);
  CHECK(rect.intersectionCount() == 20);
  CHECK(rect.segmentCount() == 31);

  CHECK_THROWS_AS(buildGrid(1, 3, 100), DomainError);
  CHECK_THROWS_AS(buildGrid(3, 3, 0), DomainError);
}

TEST_CASE("generateTraces is deterministic")
{
  RoadGrid g = buildGrid(3, 3, 2000);
  MobilityConfig cfg{20, 40.0 / 3.6, 42, 120, 1.0};
  auto a = generateTraces(g, cfg);
  auto b = generateTraces(g, cfg);
  std::ostringstream sa, sb;
  writeTracesCsv(sa, a);
  writeTracesCsv(sb, b);
  CHECK(sa.str() == sb.str());
  REQUIRE(a.size() == 20);
  CHECK(a[0].samples.size() == 121);

  cfg.seed = 43;
  std::ostringstream sc;
  writeTracesCsv(sc, generateTraces(g, cfg));
  CHECK(sc.str() != sa.str());
}

TEST_CASE("node traces do not depend on fleet size")
{
  RoadGrid g = buildGrid(3, 3, 2000);
  auto few = generateTraces(g, MobilityConfig{5, 11.0, 9, 60, 1.0});
  auto many = generateTraces(g, MobilityConfig{50, 11.0, 9, 60, 1.0});
  for (std::size_t i = 0; i < few.size(); ++i) {
    REQUIRE(few[i].samples.size() == many[i].samples.size());
    for (std::size_t k = 0; k < few[i].samples.size(); ++k)
      REQUIRE(few[i].samples[k].state == many[i].samples[k].state);
  }
}

TEST_CASE("vehicles stay on roads and keep their speed between turns")
{
  const double speed = 40.0 / 3.6;
  for (auto [rows, cols, spacing] : {std::tuple{3, 3, 2000.0}, std::tuple{4, 5, 150.0}}) {
    RoadGrid g = buildGrid(rows, cols, spacing);
    MobilityConfig cfg{15, speed, 3, 400, 1.0};
    auto traces = generateTraces(g, cfg);
    int turns = 0;
    for (const auto& trace : traces) {
      for (std::size_t k = 0; k < trace.samples.size(); ++k) {
        const auto& s = trace.samples[k];
        REQUIRE(onSomeSegment(g, s.state.position, 1e-6));
        if (k + 1 == trace.samples.size())
          continue;
        const auto& next = trace.samples[k + 1];
        double moved = distance(s.state.position, next.state.position);
        if (atIntersection(g, next.state.position) && std::abs(moved - speed) > 1e-6) {
          ++turns;
          REQUIRE(moved <= speed + 1e-6);
        }
        else {
          REQUIRE(std::abs(moved - speed * cfg.sampleInterval) <= 1e-6);
        }
        for (double f : {0.25, 0.5, 0.9}) {
          Position p = stateAt(trace, s.time + f).position;
          REQUIRE(g.distanceToRoad(p) <= 1e-6);
          REQUIRE(onSomeSegment(g, p, 1e-6));
        }
      }
    }
    if (spacing < 1000)
      CHECK(turns > 0);
  }
}

TEST_CASE("stateAt")
{
  RoadGrid g = buildGrid(3, 3, 2000);
  auto traces = generateTraces(g, MobilityConfig{3, 11.0, 5, 30, 1.0});
  const auto& tr = traces[1];
  CHECK(stateAt(tr, 7.0) == tr.samples[7].state);
  CHECK(stateAt(tr, 30.0) == tr.samples[30].state);

  Position a = tr.samples[4].state.position, b = tr.samples[5].state.position;
  Position mid = stateAt(tr, 4.5).position;
  CHECK(mid.x == doctest::Approx((a.x + b.x) / 2));
  CHECK(mid.y == doctest::Approx((a.y + b.y) / 2));

  CHECK_THROWS_AS(stateAt(tr, 30.0001), DomainError);
  CHECK_THROWS_AS(stateAt(tr, -1), DomainError);
}

TEST_CASE("trace CSV survives a write/read cycle")
{
  RoadGrid g = buildGrid(3, 3, 500);
  auto traces = generateTraces(g, MobilityConfig{4, 11.0, 77, 20, 0.5});
  std::ostringstream out;
  writeTracesCsv(out, traces);
  std::istringstream in(out.str());
  auto back = readTracesCsv(in);
  REQUIRE(back.size() == traces.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].sampleInterval == doctest::Approx(0.5));
    REQUIRE(back[i].samples.size() == traces[i].samples.size());
    for (std::size_t k = 0; k < back[i].samples.size(); ++k)
      REQUIRE(distance(back[i].samples[k].state.position, traces[i].samples[k].state.position) < 1e-6);
  }
  std::ostringstream again;
  writeTracesCsv(again, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("staticTrace")
{
  auto t = staticTrace(4, {10, 20}, 10, 1);
  CHECK(t.samples.size() == 11);
  CHECK(stateAt(t, 3.3).position == Position{10, 20});
  CHECK(stateAt(t, 3.3).velocity.speed() == 0);
}

} // TEST_SUITE
