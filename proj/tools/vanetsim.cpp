#include "vanet/config.hpp"
#include "vanet/link-kinematics.hpp"
#include "vanet/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

using namespace vanet;

namespace {

struct SweepFlags
{
  std::string config;
  std::string protocol, profile, nodes, sessions, seed, seeds, duration, grid, fading, outDir,
    workers;
  bool logs = false;
};

void
addSweepFlags(CLI::App* cmd, SweepFlags& f)
{
  cmd->add_option("--config", f.config, "key=value file applied before the flags");
  cmd->add_option("--protocol", f.protocol, "dsdv, dymo, olsr, a comma list, or all");
  cmd->add_option("--profile", f.profile, "default, mod, or all");
  cmd->add_option("--nodes", f.nodes, "node counts, comma separated");
  cmd->add_option("--sessions", f.sessions, "CBR session counts, comma separated");
  cmd->add_option("--seed", f.seed, "first seed");
  cmd->add_option("--seeds", f.seeds, "number of consecutive seeds per cell");
  cmd->add_option("--duration", f.duration, "simulated seconds");
  cmd->add_option("--grid", f.grid, "road grid RxCxS (rows, columns, spacing in m)");
  cmd->add_option("--fading", f.fading, "none or nakagami:M:Q");
  cmd->add_option("--out-dir", f.outDir, "output directory");
  cmd->add_option("--workers", f.workers, "parallel scenario runs");
  cmd->add_flag("--logs", f.logs, "also write each scenario's event log and route changes");
}

SweepConfig
resolve(const SweepFlags& f)
{
  Settings settings;
  if (!f.config.empty()) {
    std::ifstream is(f.config);
    if (!is)
      throw DomainError("cannot open config file " + f.config);
    settings = parseSettings(is);
  }
  auto put = [&settings](const char* key, const std::string& v) {
    if (!v.empty())
      settings.emplace_back(key, v);
  };
  put("protocol", f.protocol);
  put("profile", f.profile);
  put("nodes", f.nodes);
  put("sessions", f.sessions);
  put("seed", f.seed);
  put("seeds", f.seeds);
  put("duration", f.duration);
  put("grid", f.grid);
  put("fading", f.fading);
  put("out_dir", f.outDir);
  put("workers", f.workers);
  SweepConfig cfg;
  applySettings(cfg, settings);
  return cfg;
}

int
runSweepCommand(const SweepFlags& flags)
{
  SweepConfig cfg = resolve(flags);
  auto scenarios = expandSweep(cfg);
  std::filesystem::path dir(cfg.outDir);
  std::filesystem::create_directories(dir);

  ScenarioRunner runner;
  if (flags.logs) {
    std::filesystem::create_directories(dir / "logs");
    runner = [dir](const ScenarioConfig& sc) {
      ScenarioRun run = runScenario(sc);
      std::ofstream events(dir / "logs" / (sc.id() + "_events.csv"), std::ios::binary);
      run.result.log.writeCsv(events);
      std::ofstream routes(dir / "logs" / (sc.id() + "_routes.csv"), std::ios::binary);
      writeRouteChangesCsv(routes, run.result.routeChanges);
      return run.metrics;
    };
  }

  std::cerr << "running " << scenarios.size() << " scenarios on " << cfg.workers << " worker(s)\n";
  SweepOutcome out = runSweep(scenarios, cfg.workers, runner);

  {
    std::ofstream os(dir / "metrics.csv", std::ios::binary);
    writeMetricsCsv(os, out.records);
  }
  std::ifstream back(dir / "metrics.csv", std::ios::binary);
  auto rows = readMetricsCsv(back);
  writePlotFiles(rows, dir);

  for (const auto& f : out.failures)
    std::cerr << "FAILED " << f.scenarioId << ": " << f.message << '\n';
  std::cerr << out.records.size() << " ok, " << out.failures.size() << " failed; results in "
            << dir.string() << '\n';
  return out.failures.empty() ? 0 : 1;
}

struct DiagnoseFlags
{
  double dT0 = 0, d1 = 0, alpha = 0, d2 = 0, beta = 0;
  double range = 300.0;
  double step = 1.0;
  double horizon = 600.0;
};

int
runDiagnose(const DiagnoseFlags& f)
{
  StepGeometry g{f.dT0, f.d1, f.alpha, f.d2, f.beta};
  g.validate();
  if (!(f.step > 0.0))
    throw DomainError("step must be positive");

  AngleCase c = classifyCase(g.alpha, g.beta);
  CrossDistances cd = crossDistances(g);
  double literal = displacedDistanceCase(c, g, cd);
  double exact = displacedDistanceExact(g);

  // Relative velocity from the two displacements over one step.
  constexpr double rad = std::numbers::pi / 180.0;
  double ax = g.d1 * std::cos(g.alpha * rad), ay = g.d1 * std::sin(g.alpha * rad);
  double bx = -g.d2 * std::cos(g.beta * rad), by = g.d2 * std::sin(g.beta * rad);
  KinematicState a{{0, 0}, {ax / f.step, ay / f.step}};
  KinematicState b{{g.dT0, 0}, {bx / f.step, by / f.step}};
  double vr = relativeSpeed(a, b);

  std::printf("case                 %s\n", std::string(caseName(c)).c_str());
  std::printf("R1                   %.9f m\n", cd.r1);
  std::printf("R2                   %.9f m\n", cd.r2);
  std::printf("psi_A                %.9f deg\n", cd.psiA);
  std::printf("psi_B                %.9f deg\n", cd.psiB);
  std::printf("d_t1 case formula    %.9f m\n", literal);
  std::printf("d_t1 exact           %.9f m\n", exact);
  std::printf("d_t1 coordinates     %.9f m\n", displacedDistanceCoordinates(g));
  std::printf("discrepancy          %.9f m (%.6f %%)\n", literal - exact,
              100.0 * (literal - exact) / exact);
  std::printf("relative speed       %.9f m/s\n", vr);
  if (exact > f.range) {
    std::printf("residual range       link broken (d_t1 > %.3f m)\n", f.range);
    return 0;
  }
  double residual = residualRange(f.range, exact);
  std::printf("residual range       %.9f m\n", residual);
  std::printf("link duration        %.9f s%s\n", linkDuration(residual, vr, f.horizon),
              vr == 0.0 ? " (horizon cap)" : "");
  return 0;
}

struct TraceFlags
{
  std::size_t nodes = 30;
  std::uint64_t seed = 1;
  double duration = 600.0;
  double interval = 1.0;
  std::string grid = "3x3x2000";
  std::string out = "traces.csv";
};

int
runTraces(const TraceFlags& f)
{
  GridSpec gs = parseGrid(f.grid);
  MobilityConfig mc;
  mc.nodeCount = f.nodes;
  mc.seed = f.seed;
  mc.duration = f.duration;
  mc.sampleInterval = f.interval;
  auto traces = generateTraces(buildGrid(gs.rows, gs.cols, gs.spacing), mc);
  std::ofstream os(f.out, std::ios::binary);
  if (!os)
    throw DomainError("cannot write " + f.out);
  writeTracesCsv(os, traces);
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"vehicular routing simulator"};
  app.require_subcommand(1);

  SweepFlags sweepFlags;
  auto* sweep = app.add_subcommand("sweep", "run a protocol/node/session/seed grid");
  addSweepFlags(sweep, sweepFlags);

  DiagnoseFlags diag;
  auto* diagnose = app.add_subcommand("diagnose", "evaluate one two-vehicle movement step");
  diagnose->add_option("--d-t0", diag.dT0, "separation before the step (m)")->required();
  diagnose->add_option("--d1", diag.d1, "displacement of A (m)")->required();
  diagnose->add_option("--alpha", diag.alpha, "angle of A's displacement (deg)")->required();
  diagnose->add_option("--d2", diag.d2, "displacement of B (m)")->required();
  diagnose->add_option("--beta", diag.beta, "angle of B's displacement (deg)")->required();
  diagnose->add_option("--range", diag.range, "radio range (m)");
  diagnose->add_option("--step", diag.step, "step duration (s) for the relative speed");
  diagnose->add_option("--horizon", diag.horizon, "duration cap (s)");

  TraceFlags traceFlags;
  auto* traces = app.add_subcommand("traces", "write mobility traces as CSV");
  traces->add_option("--nodes", traceFlags.nodes);
  traces->add_option("--seed", traceFlags.seed);
  traces->add_option("--duration", traceFlags.duration);
  traces->add_option("--interval", traceFlags.interval);
  traces->add_option("--grid", traceFlags.grid);
  traces->add_option("--out", traceFlags.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep)
      return runSweepCommand(sweepFlags);
    if (*diagnose)
      return runDiagnose(diag);
    if (*traces)
      return runTraces(traceFlags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
