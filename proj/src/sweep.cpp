#include "vanet/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

namespace vanet {

std::vector<Variant>
allVariants()
{
  return {{ProtocolKind::Dsdv, Profile::Default},
          {ProtocolKind::Dymo, Profile::Default},
          {ProtocolKind::Dymo, Profile::Mod},
          {ProtocolKind::Olsr, Profile::Default},
          {ProtocolKind::Olsr, Profile::Mod}};
}

std::vector<Variant>
selectVariants(std::span<const ProtocolKind> kinds, std::span<const Profile> profiles)
{
  std::vector<Variant> out;
  for (const auto& v : allVariants())
    if (std::find(kinds.begin(), kinds.end(), v.kind) != kinds.end() &&
        std::find(profiles.begin(), profiles.end(), v.profile) != profiles.end())
      out.push_back(v);
  return out;
}

std::vector<ScenarioConfig>
expandSweep(const SweepConfig& cfg)
{
  std::vector<ScenarioConfig> out;
  for (const auto& v : cfg.variants)
    for (auto n : cfg.nodes)
      for (auto s : cfg.sessions)
        for (std::size_t k = 0; k < cfg.seeds; ++k) {
          ScenarioConfig sc = cfg.base;
          sc.protocol = cfg.params.setup(v.kind, v.profile);
          sc.nodes = n;
          sc.traffic.sessions = s;
          sc.seed = cfg.firstSeed + k;
          out.push_back(std::move(sc));
        }
  return out;
}

SweepOutcome
runSweep(std::span<const ScenarioConfig> scenarios, unsigned workers, const ScenarioRunner& runner)
{
  ScenarioRunner run = runner ? runner
                              : ScenarioRunner([](const ScenarioConfig& c) {
                                  return runScenario(c).metrics;
                                });
  std::vector<std::optional<MetricsRecord>> slots(scenarios.size());
  std::vector<std::optional<std::string>> errors(scenarios.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        slots[i] = run(scenarios[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(scenarios.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w)
    pool.emplace_back(work);
  work();
  for (auto& t : pool)
    t.join();

  SweepOutcome out;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    if (slots[i])
      out.records.push_back(std::move(*slots[i]));
    else
      out.failures.push_back({scenarios[i].id(), errors[i].value_or("unknown error")});
  }
  return out;
}

// Plot tables ---------------------------------------------------------------

namespace {

std::string
labelOf(const MetricsRecord& r)
{
  std::string name = r.protocol;
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return r.profile == "mod" ? "MOD-" + name : name;
}

struct Mean
{
  double sum = 0.0;
  std::size_t n = 0;

  void
  add(const std::optional<double>& v)
  {
    if (v) {
      sum += *v;
      ++n;
    }
  }
};

std::string
cell(const Mean& m)
{
  if (m.n == 0)
    return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", m.sum / static_cast<double>(m.n));
  return buf;
}

using Accessor = std::optional<double> MetricsRecord::*;

template<typename Key>
void
writeTable(const std::filesystem::path& file, const std::string& keyHeader,
           const std::vector<std::string>& labels, const std::map<Key, std::map<std::string, Mean>>& rows,
           const std::function<std::string(const Key&)>& keyText)
{
  std::ofstream os(file, std::ios::binary);
  if (!os)
    throw DomainError("cannot write " + file.string());
  os << keyHeader;
  for (const auto& l : labels)
    os << ',' << l;
  os << '\n';
  for (const auto& [key, byLabel] : rows) {
    os << keyText(key);
    for (const auto& l : labels) {
      auto it = byLabel.find(l);
      os << ',' << (it == byLabel.end() ? std::string() : cell(it->second));
    }
    os << '\n';
  }
}

} // namespace

std::vector<std::filesystem::path>
writePlotFiles(std::span<const MetricsRecord> records, const std::filesystem::path& dir)
{
  std::filesystem::create_directories(dir);
  std::vector<std::string> labels;
  for (const auto& v : allVariants()) {
    std::string l = variantLabel(v.kind, v.profile);
    for (const auto& r : records)
      if (labelOf(r) == l) {
        labels.push_back(l);
        break;
      }
  }

  const std::pair<const char*, Accessor> metrics[] = {
    {"pdr", &MetricsRecord::pdr}, {"ae2ed", &MetricsRecord::ae2edMs}, {"nro", &MetricsRecord::nro}};

  using Pair = std::pair<std::size_t, std::size_t>;
  auto pairText = [](const Pair& p) { return std::to_string(p.first) + ',' + std::to_string(p.second); };
  auto oneText = [](const std::size_t& k) { return std::to_string(k); };

  std::vector<std::filesystem::path> written;
  for (const auto& [name, field] : metrics) {
    std::map<Pair, std::map<std::string, Mean>> vsSessions, vsNodes;
    std::map<std::size_t, std::map<std::string, Mean>> barSessions, barNodes;
    for (const auto& r : records) {
      std::string l = labelOf(r);
      vsSessions[{r.nodes, r.sessions}][l].add(r.*field);
      vsNodes[{r.sessions, r.nodes}][l].add(r.*field);
      barSessions[r.sessions][l].add(r.*field);
      barNodes[r.nodes][l].add(r.*field);
    }
    std::string base(name);
    auto path = [&](const char* suffix) { return dir / (base + suffix); };
    writeTable<Pair>(path("_vs_sessions.csv"), "nodes,sessions", labels, vsSessions, pairText);
    writeTable<Pair>(path("_vs_nodes.csv"), "sessions,nodes", labels, vsNodes, pairText);
    writeTable<std::size_t>(path("_bar_sessions.csv"), "sessions", labels, barSessions, oneText);
    writeTable<std::size_t>(path("_bar_nodes.csv"), "nodes", labels, barNodes, oneText);
    for (const char* s : {"_vs_sessions.csv", "_vs_nodes.csv", "_bar_sessions.csv", "_bar_nodes.csv"})
      written.push_back(path(s));
  }
  return written;
}

} // namespace vanet
