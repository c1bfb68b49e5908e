#include "etlqr/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "etlqr/csv_log.hpp"

namespace etlqr {

std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::time:
      return "time";
    case StrategyKind::etm_original:
      return "etm-original";
    case StrategyKind::etm_improved:
      return "etm-improved";
  }
  throw std::logic_error("unknown StrategyKind");
}

StrategyKind strategy_kind_from_string(const std::string& name) {
  if (name == "time") return StrategyKind::time;
  if (name == "etm-original") return StrategyKind::etm_original;
  if (name == "etm-improved") return StrategyKind::etm_improved;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

Strategy make_strategy(StrategyKind kind, const Scenario& scenario) {
  switch (kind) {
    case StrategyKind::time:
      return TimeTriggered{scenario.period};
    case StrategyKind::etm_original:
      return EventTriggered{EtmDesign::original(scenario.design.z_bar, scenario.design.epsilon)};
    case StrategyKind::etm_improved:
      return EventTriggered{scenario.design};
  }
  throw std::logic_error("unknown StrategyKind");
}

std::filesystem::path RunManifest::log_file(StrategyKind kind) const {
  return output_directory / ("log_" + to_string(kind) + ".csv");
}

std::filesystem::path RunManifest::trajectory_file(StrategyKind kind) const {
  return output_directory / ("trajectory_" + to_string(kind) + ".csv");
}

std::filesystem::path RunManifest::summary_file() const { return output_directory / "summary.csv"; }

void RunManifest::validate() const {
  if (strategies.empty()) {
    throw std::invalid_argument("manifest: no strategies requested");
  }
  std::set<StrategyKind> seen(strategies.begin(), strategies.end());
  if (seen.size() != strategies.size()) {
    throw std::invalid_argument("manifest: duplicate strategy");
  }
}

namespace {

StrategyRun simulate_one(const Scenario& scenario, const PlantMatrices& plant, StrategyKind kind) {
  const Strategy strategy = make_strategy(kind, scenario);
  const EtmDesign design =
      std::holds_alternative<EventTriggered>(strategy) ? std::get<EventTriggered>(strategy).design : scenario.design;

  StrategyRun out{kind, synthesize(plant, scenario.weights, scenario.N, design), {}, {}};
  out.log = run(scenario.sim_config(strategy), plant, out.synthesis);

  const auto iets = out.log.inter_event_times();
  SummaryRow& row = out.summary;
  row.strategy = to_string(kind);
  row.triggers = out.log.trigger_count();
  row.min_iet = iets.empty() ? 0.0 : *std::min_element(iets.begin(), iets.end());
  row.mean_iet = iets.empty() ? 0.0 : std::accumulate(iets.begin(), iets.end(), 0.0) / static_cast<double>(iets.size());
  row.tau = kind == StrategyKind::time ? scenario.period : out.synthesis.tau;

  const double periodic = std::floor(scenario.t_end / scenario.period + 1e-9);
  row.savings_pct = periodic > 0.0 ? 100.0 * (1.0 - static_cast<double>(row.triggers) / periodic) : 0.0;
  return out;
}

}  // namespace

std::vector<StrategyRun> simulate_strategies(const Scenario& scenario, const std::vector<StrategyKind>& kinds) {
  scenario.validate();
  const PlantMatrices plant = scenario.plant();

  std::vector<std::future<StrategyRun>> pending;
  pending.reserve(kinds.size());
  for (StrategyKind kind : kinds) {
    pending.push_back(std::async(std::launch::async, simulate_one, std::cref(scenario), std::cref(plant), kind));
  }
  std::vector<StrategyRun> runs;
  runs.reserve(kinds.size());
  for (auto& f : pending) {
    runs.push_back(f.get());
  }
  return runs;
}

std::vector<SummaryRow> run_comparison(const RunManifest& manifest, const Scenario& scenario) {
  manifest.validate();
  const auto runs = simulate_strategies(scenario, manifest.strategies);

  std::filesystem::create_directories(manifest.output_directory);
  const auto open = [](const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    return out;
  };

  std::vector<SummaryRow> rows;
  for (const auto& r : runs) {
    {
      auto out = open(manifest.log_file(r.kind));
      write_log_csv(out, r.log);
    }
    {
      auto out = open(manifest.trajectory_file(r.kind));
      write_trajectory_csv(out, reconstruct_trajectory(r.log, scenario.vehicle, scenario.start));
    }
    rows.push_back(r.summary);
  }
  auto out = open(manifest.summary_file());
  write_summary_csv(out, rows);
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "strategy,triggers,min_iet,mean_iet,tau,savings_pct\n";
  for (const auto& r : rows) {
    out << r.strategy << ',' << r.triggers << ',' << format_double(r.min_iet) << ',' << format_double(r.mean_iet)
        << ',' << format_double(r.tau) << ',' << format_double(r.savings_pct) << '\n';
  }
}

void print_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows) {
  const auto flags = out.flags();
  out << std::left << std::setw(14) << "strategy" << std::right << std::setw(10) << "triggers" << std::setw(12)
      << "min IET" << std::setw(12) << "mean IET" << std::setw(14) << "tau" << std::setw(11) << "savings\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(14) << r.strategy << std::right << std::setw(10) << r.triggers << std::fixed
        << std::setprecision(4) << std::setw(12) << r.min_iet << std::setw(12) << r.mean_iet << std::scientific
        << std::setprecision(3) << std::setw(14) << r.tau << std::fixed << std::setprecision(1) << std::setw(9)
        << r.savings_pct << " %\n";
  }
  out.flags(flags);
}

}  // namespace etlqr
