#ifndef VANET_METRICS_HPP
#define VANET_METRICS_HPP

#include "vanet/link-kinematics.hpp"
#include "vanet/mobility.hpp"
#include "vanet/simulator.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vanet {

struct LogCounts
{
  std::uint64_t dataOriginated = 0;
  std::uint64_t dataDelivered = 0;
  std::uint64_t dataDropped = 0;
  std::uint64_t controlSent = 0;
};

LogCounts
countLog(const EventLog& log);

/// Delivered / originated data packets; empty when nothing was originated.
std::optional<double>
computePdr(const EventLog& log);

/// Mean origination-to-delivery delay in milliseconds; empty when nothing arrived.
std::optional<double>
computeAe2ed(const EventLog& log);

/// Control transmissions (every hop) per delivered data packet; empty when nothing arrived.
std::optional<double>
computeNro(const EventLog& log);

/**
 * Maximal in-range intervals of every node pair. Pairs are tested at each
 * trace sample; a change of state between two samples is located by
 * bisection to within 1 ms. Each episode carries the link duration predicted
 * from the pair's separation and relative speed at its start.
 */
std::vector<LinkEpisode>
measureLinkEpisodes(std::span<const VehicleTrace> traces, double range, double horizon);

/// Mean measured duration; empty without episodes.
std::optional<double>
meanLinkDuration(std::span<const LinkEpisode> episodes);

/**
 * Mean path stability over established paths. A path is established when a
 * delivered data packet of a (source, destination) flow takes a hop sequence
 * different from that flow's previous one. Each hop is scored with the link
 * duration predicted from the traces at the moment it was used, and the path
 * scores the minimum. Empty when no path was established.
 */
std::optional<double>
measurePathStability(const EventLog& log, std::span<const VehicleTrace> traces, double range,
                     double horizon);

struct MetricsRecord
{
  std::string scenarioId;
  std::string protocol;
  std::string profile;
  std::size_t nodes = 0;
  std::size_t sessions = 0;
  std::uint64_t seed = 0;
  std::optional<double> pdr;
  std::optional<double> ae2edMs;
  std::optional<double> nro;
  std::optional<double> meanLinkDuration;
  std::optional<double> meanPathStability;
  std::uint64_t dataSent = 0;
  std::uint64_t dataDelivered = 0;
  std::uint64_t controlSent = 0;

  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

void
writeMetricsCsv(std::ostream& os, std::span<const MetricsRecord> records);

std::vector<MetricsRecord>
readMetricsCsv(std::istream& is);

} // namespace vanet

#endif // VANET_METRICS_HPP
