#ifndef VANET_SWEEP_HPP
#define VANET_SWEEP_HPP

#include "vanet/scenario.hpp"

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace vanet {

struct Variant
{
  ProtocolKind kind = ProtocolKind::Dsdv;
  Profile profile = Profile::Default;

  friend bool operator==(const Variant&, const Variant&) = default;
};

/// DSDV, DYMO, MOD-DYMO, OLSR, MOD-OLSR.
std::vector<Variant>
allVariants();

/// Every combination of the listed protocols and profiles that exists (DSDV has no Mod).
std::vector<Variant>
selectVariants(std::span<const ProtocolKind> kinds, std::span<const Profile> profiles);

struct SweepConfig
{
  std::vector<Variant> variants = allVariants();
  std::vector<std::size_t> nodes{30, 50, 70, 90, 120};
  std::vector<std::size_t> sessions{6, 12, 18, 24};
  std::uint64_t firstSeed = 1;
  std::size_t seeds = 3;
  ScenarioConfig base;
  ParameterSet params;
  unsigned workers = 1;
  std::string outDir = "results";
};

/// Scenarios ordered by variant, nodes, sessions, seed.
std::vector<ScenarioConfig>
expandSweep(const SweepConfig& cfg);

struct SweepFailure
{
  std::string scenarioId;
  std::string message;
};

struct SweepOutcome
{
  /// In the order of the input scenarios, failed ones left out.
  std::vector<MetricsRecord> records;
  std::vector<SweepFailure> failures;
};

using ScenarioRunner = std::function<MetricsRecord(const ScenarioConfig&)>;

/// Run scenarios on up to @p workers threads. A throwing scenario is recorded
/// as a failure and does not affect the others.
SweepOutcome
runSweep(std::span<const ScenarioConfig> scenarios, unsigned workers,
         const ScenarioRunner& runner = {});

/**
 * Plot tables derived from metrics rows alone, for pdr, ae2ed and nro:
 * `<metric>_vs_sessions.csv`, `<metric>_vs_nodes.csv`,
 * `<metric>_bar_sessions.csv` and `<metric>_bar_nodes.csv`. Each cell is the
 * mean over the seeds (and, for bars, the other axis) of one variant.
 * Returns the files written.
 */
std::vector<std::filesystem::path>
writePlotFiles(std::span<const MetricsRecord> records, const std::filesystem::path& dir);

} // namespace vanet

#endif // VANET_SWEEP_HPP
