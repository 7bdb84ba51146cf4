#include "vanet/channel.hpp"

#include <boost/math/special_functions/gamma.hpp>

namespace vanet {

void
ChannelConfig::validate() const
{
  if (!(range > 0.0))
    throw DomainError("radio range must be positive");
  if (fading == Fading::Nakagami) {
    if (!(nakagamiM >= 0.5))
      throw DomainError("Nakagami shape must be at least 0.5");
    if (!(thresholdRatio > 0.0))
      throw DomainError("threshold ratio must be positive");
  }
  if (hopLatency < SimTime::zero() || maxJitter < SimTime::zero())
    throw DomainError("latencies must be non-negative");
}

bool
inRange(const Position& a, const Position& b, double range)
{
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy <= range * range;
}

double
receptionProbability(const ChannelConfig& cfg, double dist)
{
  if (!(dist >= 0.0))
    throw DomainError("distance must be non-negative");
  if (dist > cfg.range)
    return 0.0;
  if (cfg.fading == Fading::None)
    return 1.0;
  double ratio = dist / cfg.range;
  return boost::math::gamma_q(cfg.nakagamiM, cfg.nakagamiM * cfg.thresholdRatio * ratio * ratio);
}

} // namespace vanet
