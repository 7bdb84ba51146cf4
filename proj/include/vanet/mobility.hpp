#ifndef VANET_MOBILITY_HPP
#define VANET_MOBILITY_HPP

#include "vanet/common.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace vanet {

/// Manhattan road grid. Intersection (row, col) sits at (col * spacing, row * spacing).
struct RoadGrid
{
  int rows = 0;
  int cols = 0;
  double spacing = 0.0;

  std::size_t
  intersectionCount() const
  {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  std::size_t
  segmentCount() const
  {
    return static_cast<std::size_t>(rows * (cols - 1) + cols * (rows - 1));
  }

  double
  width() const
  {
    return (cols - 1) * spacing;
  }

  double
  height() const
  {
    return (rows - 1) * spacing;
  }

  Position
  intersection(int row, int col) const
  {
    return {col * spacing, row * spacing};
  }

  /// Distance from @p p to the nearest road segment.
  double
  distanceToRoad(const Position& p) const;
};

RoadGrid
buildGrid(int rows, int cols, double spacing);

struct MobilityConfig
{
  std::size_t nodeCount = 2;
  double speed = 40.0 / 3.6;
  std::uint64_t seed = 1;
  double duration = 600.0;
  double sampleInterval = 1.0;

  void
  validate() const;
};

struct TraceSample
{
  double time = 0.0;
  /// Velocity holds over [time, next sample time).
  KinematicState state;
};

struct VehicleTrace
{
  NodeId node = 0;
  double sampleInterval = 1.0;
  std::vector<TraceSample> samples;

  double
  duration() const
  {
    return samples.empty() ? 0.0 : samples.back().time;
  }
};

/**
 * Random-turn vehicles on @p grid. Each vehicle starts at a random point of a
 * random segment and drives at cfg.speed; on reaching an intersection it halts
 * until the next sample instant and then leaves along a uniformly chosen road,
 * never reversing unless the intersection is a dead end. Node k's trace depends
 * only on (cfg.seed, k).
 */
std::vector<VehicleTrace>
generateTraces(const RoadGrid& grid, const MobilityConfig& cfg);

/// Linear interpolation inside the enclosing sample interval.
KinematicState
stateAt(const VehicleTrace& trace, double t);

/// A parked vehicle, for static scenarios.
VehicleTrace
staticTrace(NodeId node, Position where, double duration, double sampleInterval);

/// CSV `time_s,node,x_m,y_m,vx_mps,vy_mps`, node-major.
void
writeTracesCsv(std::ostream& os, std::span<const VehicleTrace> traces);

std::vector<VehicleTrace>
readTracesCsv(std::istream& is);

} // namespace vanet

#endif // VANET_MOBILITY_HPP
