#ifndef VANET_COMMON_HPP
#define VANET_COMMON_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace vanet {

using NodeId = std::uint32_t;

/// Marks "all neighbors" as a packet destination.
inline constexpr NodeId kBroadcast = std::numeric_limits<NodeId>::max();

/// Simulated time. Integer nanoseconds keep event ordering and delay sums exact.
using SimTime = std::chrono::nanoseconds;

inline SimTime
fromSeconds(double seconds)
{
  return SimTime(static_cast<std::int64_t>(std::llround(seconds * 1e9)));
}

inline constexpr double
toSeconds(SimTime t)
{
  return static_cast<double>(t.count()) * 1e-9;
}

/// Exact decimal rendering "S.nnnnnnnnn" of a non-negative time.
std::string
formatSeconds(SimTime t);

/// Precondition or argument out of the operation's domain.
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Sine-law argument outside [-1, 1]; the supplied triangle cannot exist.
class GeometryError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Separation already exceeds the radio range.
class LinkBrokenError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Caller broke an API contract (wrong case for a geometry, event in the past).
class ContractError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

struct Position
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

struct Velocity
{
  double vx = 0.0;
  double vy = 0.0;

  double
  speed() const
  {
    return std::hypot(vx, vy);
  }

  friend bool operator==(const Velocity&, const Velocity&) = default;
};

struct KinematicState
{
  Position position;
  Velocity velocity;

  /// Constant-velocity extrapolation.
  Position
  positionAfter(double seconds) const
  {
    return {position.x + velocity.vx * seconds, position.y + velocity.vy * seconds};
  }

  friend bool operator==(const KinematicState&, const KinematicState&) = default;
};

inline double
distance(const Position& a, const Position& b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

} // namespace vanet

#endif // VANET_COMMON_HPP
