#include "vanet/link-kinematics.hpp"

#include <algorithm>
#include <numbers>

namespace vanet {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

double
cosDeg(double deg)
{
  return std::cos(deg * kDegToRad);
}

double
sinDeg(double deg)
{
  return std::sin(deg * kDegToRad);
}

void
checkAngle(double angle, const char* name)
{
  if (!(angle > 0.0 && angle < 180.0))
    throw DomainError(std::string(name) + " must lie strictly between 0 and 180 degrees");
}

// Law of cosines with the included angle in degrees, clamped at zero against rounding.
double
cosineLaw(double a, double b, double includedDeg)
{
  return std::sqrt(std::max(0.0, a * a + b * b - 2.0 * a * b * cosDeg(includedDeg)));
}

// Angle at the stationary corner of triangle (start, partner start, partner end).
// The sine law only yields the acute reading, so the cosine law picks the branch.
double
cornerAngle(double dT0, double displacement, double angle, double cross)
{
  if (displacement == 0.0)
    return 0.0;
  double psi = crossAngle(displacement, angle, cross);
  if (dT0 * dT0 + cross * cross - displacement * displacement < 0.0)
    psi = 180.0 - psi;
  return psi;
}

} // namespace

void
StepGeometry::validate() const
{
  if (!(dT0 > 0.0) || !std::isfinite(dT0))
    throw DomainError("initial separation must be positive");
  if (!(d1 >= 0.0) || !(d2 >= 0.0) || !std::isfinite(d1) || !std::isfinite(d2))
    throw DomainError("displacements must be non-negative");
  checkAngle(alpha, "alpha");
  checkAngle(beta, "beta");
}

std::string_view
caseName(AngleCase c)
{
  switch (c) {
  case AngleCase::ObtuseObtuse:
    return "obtuse-obtuse";
  case AngleCase::AcuteAcute:
    return "acute-acute";
  case AngleCase::AcuteObtuse:
    return "acute-obtuse";
  case AngleCase::ObtuseAcute:
    return "obtuse-acute";
  }
  return "?";
}

AngleCase
classifyCase(double alpha, double beta)
{
  checkAngle(alpha, "alpha");
  checkAngle(beta, "beta");
  bool alphaObtuse = alpha > 90.0;
  bool betaObtuse = beta > 90.0;
  if (alphaObtuse && betaObtuse)
    return AngleCase::ObtuseObtuse;
  if (!alphaObtuse && !betaObtuse)
    return AngleCase::AcuteAcute;
  return alphaObtuse ? AngleCase::ObtuseAcute : AngleCase::AcuteObtuse;
}

double
crossDistance(double dT0, double displacement, double angle)
{
  if (!(dT0 > 0.0))
    throw DomainError("initial separation must be positive");
  if (!(displacement >= 0.0))
    throw DomainError("displacement must be non-negative");
  return cosineLaw(dT0, displacement, angle);
}

double
crossAngle(double displacement, double angle, double r)
{
  if (!(r > 0.0))
    throw DomainError("cross distance must be positive");
  if (!(displacement >= 0.0))
    throw DomainError("displacement must be non-negative");
  double ratio = displacement * sinDeg(angle) / r;
  // arguments that equal 1 up to rounding are accepted
  constexpr double kSlack = 1e-12;
  if (std::abs(ratio) > 1.0 + kSlack)
    throw GeometryError("sine-law argument outside [-1, 1]");
  return std::asin(std::clamp(ratio, -1.0, 1.0)) / kDegToRad;
}

CrossDistances
crossDistances(const StepGeometry& g)
{
  g.validate();
  CrossDistances cd;
  cd.r1 = crossDistance(g.dT0, g.d2, g.beta);
  cd.r2 = crossDistance(g.dT0, g.d1, g.alpha);
  cd.psiA = crossAngle(g.d2, g.beta, cd.r1);
  cd.psiB = crossAngle(g.d1, g.alpha, cd.r2);
  return cd;
}

double
displacedDistanceExact(const StepGeometry& g)
{
  g.validate();
  double r1 = crossDistance(g.dT0, g.d2, g.beta);
  double psiA = cornerAngle(g.dT0, g.d2, g.beta, r1);
  return cosineLaw(g.d1, r1, g.alpha - psiA);
}

double
displacedDistanceExactViaB(const StepGeometry& g)
{
  g.validate();
  double r2 = crossDistance(g.dT0, g.d1, g.alpha);
  double psiB = cornerAngle(g.dT0, g.d1, g.alpha, r2);
  return cosineLaw(g.d2, r2, g.beta - psiB);
}

double
displacedDistanceCoordinates(const StepGeometry& g)
{
  g.validate();
  Position a1{g.d1 * cosDeg(g.alpha), g.d1 * sinDeg(g.alpha)};
  Position b1{g.dT0 - g.d2 * cosDeg(g.beta), g.d2 * sinDeg(g.beta)};
  return distance(a1, b1);
}

double
displacedDistanceCase(AngleCase c, const StepGeometry& g, const CrossDistances& cd)
{
  if (classifyCase(g.alpha, g.beta) != c)
    throw ContractError("angle case does not match the step geometry");
  switch (c) {
  case AngleCase::ObtuseObtuse:
    return g.dT0 + g.d1 * cosDeg(180.0 - g.alpha) + g.d2 * cosDeg(180.0 - g.beta);
  case AngleCase::AcuteAcute:
    return g.dT0 + cd.r1 * cosDeg(180.0 - cd.psiA) + cd.r2 * cosDeg(180.0 - cd.psiB);
  case AngleCase::AcuteObtuse:
    return g.dT0 - g.d1 * cosDeg(g.alpha) + g.d2 * cosDeg(180.0 - g.beta);
  case AngleCase::ObtuseAcute:
    return g.dT0 + g.d1 * cosDeg(180.0 - g.alpha) - g.d2 * cosDeg(g.beta);
  }
  throw ContractError("unknown angle case");
}

double
residualRange(double range, double dT1)
{
  if (!(range > 0.0))
    throw DomainError("range must be positive");
  if (!(dT1 >= 0.0))
    throw DomainError("separation must be non-negative");
  if (dT1 > range)
    throw LinkBrokenError("separation exceeds radio range");
  return range - dT1;
}

double
linkDuration(double residual, double relativeSpeed, double horizon)
{
  if (!(residual >= 0.0) || !(relativeSpeed >= 0.0))
    throw DomainError("residual range and relative speed must be non-negative");
  if (!(horizon >= 0.0))
    throw DomainError("horizon must be non-negative");
  if (relativeSpeed == 0.0)
    return horizon;
  return std::min(residual / relativeSpeed, horizon);
}

double
relativeSpeed(const KinematicState& a, const KinematicState& b)
{
  return std::hypot(a.velocity.vx - b.velocity.vx, a.velocity.vy - b.velocity.vy);
}

double
exactLinkExpiry(const KinematicState& a, const KinematicState& b, double range, double horizon)
{
  double px = b.position.x - a.position.x;
  double py = b.position.y - a.position.y;
  double c = px * px + py * py - range * range;
  if (c > 0.0)
    throw DomainError("nodes are out of range at the start");
  double vx = b.velocity.vx - a.velocity.vx;
  double vy = b.velocity.vy - a.velocity.vy;
  double qa = vx * vx + vy * vy;
  if (qa == 0.0)
    return horizon;
  // |p + t v|^2 = range^2; c <= 0 so the larger root is >= 0. Written in the
  // cancellation-free form for whichever sign qb takes.
  double qb = 2.0 * (px * vx + py * vy);
  double root = std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * c));
  double t = qb <= 0.0 ? (-qb + root) / (2.0 * qa) : (2.0 * c) / (-qb - root);
  return std::min(t, horizon);
}

double
pathStability(std::span<const LinkEpisode> links)
{
  if (links.empty())
    throw DomainError("path must contain at least one link");
  for (std::size_t i = 1; i < links.size(); ++i) {
    const auto& prev = links[i - 1];
    const auto& cur = links[i];
    bool joined = cur.nodeA == prev.nodeA || cur.nodeA == prev.nodeB ||
                  cur.nodeB == prev.nodeA || cur.nodeB == prev.nodeB;
    if (!joined)
      throw DomainError("consecutive links do not share an endpoint");
  }
  double stability = links.front().predictedDuration;
  for (const auto& link : links)
    stability = std::min(stability, link.predictedDuration);
  return stability;
}

} // namespace vanet
