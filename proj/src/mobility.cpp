#include "vanet/mobility.hpp"

#include "vanet/random.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace vanet {

namespace {

struct Heading
{
  int dRow = 0;
  int dCol = 0;
};

constexpr std::array<Heading, 4> kHeadings{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

struct Vehicle
{
  Position pos;
  int targetRow = 0;
  int targetCol = 0;
  Heading heading;
  bool waiting = false; // parked on the target intersection, turn pending
};

bool
inside(const RoadGrid& g, int row, int col)
{
  return row >= 0 && row < g.rows && col >= 0 && col < g.cols;
}

void
chooseTurn(const RoadGrid& grid, Vehicle& v, RandomStream& rng)
{
  std::vector<Heading> options;
  Heading back{-v.heading.dRow, -v.heading.dCol};
  for (const auto& h : kHeadings) {
    if (!inside(grid, v.targetRow + h.dRow, v.targetCol + h.dCol))
      continue;
    if (h.dRow == back.dRow && h.dCol == back.dCol)
      continue;
    options.push_back(h);
  }
  if (options.empty())
    options.push_back(back);
  v.heading = options[rng.index(options.size())];
  v.targetRow += v.heading.dRow;
  v.targetCol += v.heading.dCol;
  v.waiting = false;
}

Vehicle
placeVehicle(const RoadGrid& grid, RandomStream& rng)
{
  std::size_t horizontal = static_cast<std::size_t>(grid.rows * (grid.cols - 1));
  std::size_t seg = rng.index(grid.segmentCount());
  int row0, col0, row1, col1;
  if (seg < horizontal) {
    row0 = row1 = static_cast<int>(seg / (grid.cols - 1));
    col0 = static_cast<int>(seg % (grid.cols - 1));
    col1 = col0 + 1;
  }
  else {
    seg -= horizontal;
    col0 = col1 = static_cast<int>(seg / (grid.rows - 1));
    row0 = static_cast<int>(seg % (grid.rows - 1));
    row1 = row0 + 1;
  }
  double frac = rng.uniform01();
  if (rng.index(2) == 1) {
    std::swap(row0, row1);
    std::swap(col0, col1);
  }
  Position from = grid.intersection(row0, col0);
  Position to = grid.intersection(row1, col1);
  Vehicle v;
  v.pos = {from.x + (to.x - from.x) * frac, from.y + (to.y - from.y) * frac};
  v.targetRow = row1;
  v.targetCol = col1;
  v.heading = {row1 - row0, col1 - col0};
  return v;
}

void
advance(const RoadGrid& grid, Vehicle& v, double step)
{
  Position target = grid.intersection(v.targetRow, v.targetCol);
  double remaining = distance(v.pos, target);
  if (step >= remaining) {
    v.pos = target;
    v.waiting = true;
    return;
  }
  v.pos.x += v.heading.dCol * step;
  v.pos.y += v.heading.dRow * step;
}

std::string
fmt(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  // avoid "-0.000000"
  if (std::string_view(buf) == "-0.000000")
    return "0.000000";
  return buf;
}

} // namespace

double
RoadGrid::distanceToRoad(const Position& p) const
{
  double best = std::numeric_limits<double>::infinity();
  // horizontal roads
  double cx = std::clamp(p.x, 0.0, width());
  for (int r = 0; r < rows; ++r)
    best = std::min(best, std::hypot(p.x - cx, p.y - r * spacing));
  double cy = std::clamp(p.y, 0.0, height());
  for (int c = 0; c < cols; ++c)
    best = std::min(best, std::hypot(p.x - c * spacing, p.y - cy));
  return best;
}

RoadGrid
buildGrid(int rows, int cols, double spacing)
{
  if (rows < 2 || cols < 2)
    throw DomainError("grid needs at least two roads in each direction");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw DomainError("grid spacing must be positive");
  return RoadGrid{rows, cols, spacing};
}

void
MobilityConfig::validate() const
{
  if (nodeCount < 2)
    throw DomainError("need at least two vehicles");
  if (!(speed > 0.0))
    throw DomainError("speed must be positive");
  if (!(duration > 0.0))
    throw DomainError("duration must be positive");
  if (!(sampleInterval > 0.0))
    throw DomainError("sample interval must be positive");
}

std::vector<VehicleTrace>
generateTraces(const RoadGrid& grid, const MobilityConfig& cfg)
{
  cfg.validate();
  auto steps = static_cast<std::size_t>(std::llround(cfg.duration / cfg.sampleInterval));
  double step = cfg.speed * cfg.sampleInterval;

  std::vector<VehicleTrace> traces;
  traces.reserve(cfg.nodeCount);
  for (NodeId id = 0; id < cfg.nodeCount; ++id) {
    RandomStream rng(cfg.seed, StreamTag::Mobility, {id});
    Vehicle v = placeVehicle(grid, rng);

    VehicleTrace trace;
    trace.node = id;
    trace.sampleInterval = cfg.sampleInterval;
    trace.samples.resize(steps + 1);
    trace.samples[0].time = 0.0;
    trace.samples[0].state.position = v.pos;
    for (std::size_t k = 1; k <= steps; ++k) {
      if (v.waiting)
        chooseTurn(grid, v, rng);
      advance(grid, v, step);
      auto& prev = trace.samples[k - 1];
      auto& cur = trace.samples[k];
      cur.time = static_cast<double>(k) * cfg.sampleInterval;
      cur.state.position = v.pos;
      prev.state.velocity = {(v.pos.x - prev.state.position.x) / cfg.sampleInterval,
                             (v.pos.y - prev.state.position.y) / cfg.sampleInterval};
    }
    if (steps > 0)
      trace.samples[steps].state.velocity = trace.samples[steps - 1].state.velocity;
    traces.push_back(std::move(trace));
  }
  return traces;
}

KinematicState
stateAt(const VehicleTrace& trace, double t)
{
  if (trace.samples.empty())
    throw DomainError("empty trace");
  if (!(t >= 0.0) || t > trace.duration())
    throw DomainError("time outside the trace");
  auto last = trace.samples.size() - 1;
  auto k = static_cast<std::size_t>(t / trace.sampleInterval);
  if (k >= last) {
    if (t >= trace.samples[last].time)
      return trace.samples[last].state;
    k = last - 1;
  }
  const auto& s = trace.samples[k];
  return {s.state.positionAfter(t - s.time), s.state.velocity};
}

VehicleTrace
staticTrace(NodeId node, Position where, double duration, double sampleInterval)
{
  if (!(duration > 0.0) || !(sampleInterval > 0.0))
    throw DomainError("duration and sample interval must be positive");
  auto steps = static_cast<std::size_t>(std::llround(duration / sampleInterval));
  VehicleTrace trace;
  trace.node = node;
  trace.sampleInterval = sampleInterval;
  trace.samples.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    trace.samples[k].time = static_cast<double>(k) * sampleInterval;
    trace.samples[k].state.position = where;
  }
  return trace;
}

void
writeTracesCsv(std::ostream& os, std::span<const VehicleTrace> traces)
{
  os << "time_s,node,x_m,y_m,vx_mps,vy_mps\n";
  for (const auto& trace : traces) {
    for (const auto& s : trace.samples) {
      os << fmt(s.time) << ',' << trace.node << ',' << fmt(s.state.position.x) << ','
         << fmt(s.state.position.y) << ',' << fmt(s.state.velocity.vx) << ','
         << fmt(s.state.velocity.vy) << '\n';
    }
  }
}

std::vector<VehicleTrace>
readTracesCsv(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line) || line != "time_s,node,x_m,y_m,vx_mps,vy_mps")
    throw DomainError("unexpected trace header");
  std::map<NodeId, VehicleTrace> byNode;
  std::size_t lineNo = 1;
  while (std::getline(is, line)) {
    ++lineNo;
    if (line.empty())
      continue;
    std::istringstream row(line);
    std::string field;
    std::array<double, 6> v{};
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::getline(row, field, ','))
        throw DomainError("short trace row at line " + std::to_string(lineNo));
      v[i] = std::stod(field);
    }
    auto node = static_cast<NodeId>(v[1]);
    auto& trace = byNode[node];
    trace.node = node;
    trace.samples.push_back({v[0], {{v[2], v[3]}, {v[4], v[5]}}});
  }
  std::vector<VehicleTrace> out;
  for (auto& [node, trace] : byNode) {
    if (trace.samples.size() >= 2)
      trace.sampleInterval = trace.samples[1].time - trace.samples[0].time;
    out.push_back(std::move(trace));
  }
  return out;
}

} // namespace vanet
