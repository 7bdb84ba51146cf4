#ifndef VANET_SCENARIO_HPP
#define VANET_SCENARIO_HPP

#include "vanet/metrics.hpp"
#include "vanet/simulator.hpp"

#include <string>
#include <vector>

namespace vanet {

struct GridSpec
{
  int rows = 3;
  int cols = 3;
  double spacing = 2000.0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// "RxCxS", e.g. "3x3x2000".
GridSpec
parseGrid(const std::string& text);

/// "none" or "nakagami:M:Q".
void
parseFading(const std::string& text, ChannelConfig& channel);

/// Parameters of every protocol variant, as loaded from configuration.
struct ParameterSet
{
  DsdvParams dsdv = dsdvProfile(Profile::Default);
  DymoParams dymoDefault = dymoProfile(Profile::Default);
  DymoParams dymoMod = dymoProfile(Profile::Mod);
  OlsrParams olsrDefault = olsrProfile(Profile::Default);
  OlsrParams olsrMod = olsrProfile(Profile::Mod);

  ProtocolSetup
  setup(ProtocolKind kind, Profile profile) const;
};

struct ScenarioConfig
{
  ProtocolSetup protocol;
  std::size_t nodes = 30;
  std::uint64_t seed = 1;
  double duration = 600.0;
  GridSpec grid;
  double speed = 40.0 / 3.6;
  double sampleInterval = 1.0;
  ChannelConfig channel;
  TrafficConfig traffic;

  /// e.g. "mod-olsr_n050_s12_seed3".
  std::string
  id() const;
};

/// Traces, channel, protocol and traffic ready for a Simulator.
Scenario
buildScenario(const ScenarioConfig& cfg);

struct ScenarioRun
{
  MetricsRecord metrics;
  RunResult result;
  std::vector<VehicleTrace> traces;
};

ScenarioRun
runScenario(const ScenarioConfig& cfg);

} // namespace vanet

#endif // VANET_SCENARIO_HPP
