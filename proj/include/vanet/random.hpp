#ifndef VANET_RANDOM_HPP
#define VANET_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace vanet {

/// Stream labels keep the generators of different subsystems independent.
enum class StreamTag : std::uint64_t {
  Mobility = 1,
  Protocol = 2,
  ControlChannel = 3,
  DataChannel = 4,
  Traffic = 5,
};

/**
 * Seedable pseudo-random stream keyed by (seed, tag, extra keys).
 *
 * Draws use the raw 64-bit engine output rather than the standard
 * distributions, whose algorithms are implementation-defined, so sequences
 * are identical on every platform.
 */
class RandomStream
{
public:
  RandomStream(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> keys = {})
  {
    std::vector<std::uint32_t> words;
    auto push = [&words](std::uint64_t v) {
      words.push_back(static_cast<std::uint32_t>(v));
      words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    push(static_cast<std::uint64_t>(tag));
    for (auto k : keys)
      push(k);
    std::seed_seq seq(words.begin(), words.end());
    m_engine.seed(seq);
  }

  std::uint64_t
  next()
  {
    return m_engine();
  }

  /// Uniform in [0, 1).
  double
  uniform01()
  {
    return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
  }

  double
  uniform(double lo, double hi)
  {
    return lo + (hi - lo) * uniform01();
  }

  /// Uniform in [0, n); n must be positive.
  std::size_t
  index(std::size_t n)
  {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n));
  }

private:
  std::mt19937_64 m_engine;
};

} // namespace vanet

#endif // VANET_RANDOM_HPP
