#ifndef VANET_CHANNEL_HPP
#define VANET_CHANNEL_HPP

#include "vanet/common.hpp"

namespace vanet {

enum class Fading {
  None,
  Nakagami,
};

struct ChannelConfig
{
  double range = 300.0;
  Fading fading = Fading::None;
  /// Nakagami shape m (>= 0.5).
  double nakagamiM = 1.0;
  /// Reception threshold relative to the mean received power at full range.
  double thresholdRatio = 1.0;
  SimTime hopLatency = std::chrono::milliseconds(2);
  /// Arrival jitter is uniform in [0, maxJitter).
  SimTime maxJitter = std::chrono::milliseconds(1);

  void
  validate() const;
};

/// Inclusive: a node exactly at @p range is reachable.
bool
inRange(const Position& a, const Position& b, double range);

/**
 * Probability that a frame sent over @p dist metres is received.
 *
 * Without fading this is the unit disk. With Nakagami-m fading the received
 * power is Gamma(m) distributed around an inverse-square mean, giving the
 * upper regularized incomplete gamma Q(m, m * q * (dist / range)^2) inside
 * the range and zero beyond it.
 */
double
receptionProbability(const ChannelConfig& cfg, double dist);

} // namespace vanet

#endif // VANET_CHANNEL_HPP
