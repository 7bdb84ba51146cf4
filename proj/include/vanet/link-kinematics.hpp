#ifndef VANET_LINK_KINEMATICS_HPP
#define VANET_LINK_KINEMATICS_HPP

#include "vanet/common.hpp"

#include <span>
#include <string_view>

namespace vanet {

/**
 * One movement step of two vehicles A and B.
 *
 * A starts at the origin and B at (dT0, 0). Each displacement angle is
 * measured at the vehicle's start position from the line towards the other
 * vehicle (A from A->B, B from B->A), with both vehicles displaced to the same
 * side of that line. Angles are in degrees.
 */
struct StepGeometry
{
  double dT0 = 0.0;
  double d1 = 0.0;   ///< displacement of A
  double alpha = 0.0;
  double d2 = 0.0;   ///< displacement of B
  double beta = 0.0;

  /// Throws DomainError unless dT0 > 0, d1, d2 >= 0 and both angles lie in (0, 180).
  void
  validate() const;
};

enum class AngleCase {
  ObtuseObtuse,
  AcuteAcute,
  AcuteObtuse,
  ObtuseAcute,
};

std::string_view
caseName(AngleCase c);

/// Cosine/sine-law intermediates: r1 = |A(t0) B(t1)|, r2 = |B(t0) A(t1)|.
struct CrossDistances
{
  double r1 = 0.0;
  double r2 = 0.0;
  double psiA = 0.0; ///< degrees, arcsine principal value
  double psiB = 0.0; ///< degrees, arcsine principal value
};

struct LinkEpisode
{
  NodeId nodeA = 0;
  NodeId nodeB = 0;
  double start = 0.0;
  double end = 0.0;
  double predictedDuration = 0.0;
  double measuredDuration = 0.0;
};

/// A right angle counts as acute so the four cases tile (0,180)^2.
AngleCase
classifyCase(double alpha, double beta);

double
crossDistance(double dT0, double displacement, double angle);

/// Principal-value arcsine of displacement*sin(angle)/r, in degrees within [0, 90].
double
crossAngle(double displacement, double angle, double r);

CrossDistances
crossDistances(const StepGeometry& g);

/// Separation after the step through triangle A(t0) A(t1) B(t1) (law of cosines).
double
displacedDistanceExact(const StepGeometry& g);

/// Same separation through triangle B(t0) B(t1) A(t1); must agree with the A-side route.
double
displacedDistanceExactViaB(const StepGeometry& g);

/// Separation by direct coordinate placement of the four points.
double
displacedDistanceCoordinates(const StepGeometry& g);

/**
 * The per-case projection formula evaluated literally.
 *
 * ObtuseObtuse, AcuteObtuse and ObtuseAcute project both displacements on the
 * line AB. AcuteAcute uses the cross distances and their angles, which gives
 * -dT0 when neither vehicle moves; the exact routes above stay authoritative.
 */
double
displacedDistanceCase(AngleCase c, const StepGeometry& g, const CrossDistances& cd);

/// Throws LinkBrokenError when dT1 > range.
double
residualRange(double range, double dT1);

/**
 * Residual range over relative speed, capped at @p horizon. A zero relative
 * speed yields the horizon.
 */
double
linkDuration(double residual, double relativeSpeed, double horizon);

/// |va - vb|
double
relativeSpeed(const KinematicState& a, const KinematicState& b);

/**
 * First instant after which two constant-velocity nodes are farther apart than
 * @p range, or @p horizon if that does not happen before it.
 */
double
exactLinkExpiry(const KinematicState& a, const KinematicState& b, double range, double horizon);

/// Bottleneck predicted duration over a chain of links.
double
pathStability(std::span<const LinkEpisode> links);

} // namespace vanet

#endif // VANET_LINK_KINEMATICS_HPP
