#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "etlqr/config.hpp"
#include "etlqr/sim.hpp"

namespace etlqr {

enum class StrategyKind { time, etm_original, etm_improved };

std::string to_string(StrategyKind kind);
StrategyKind strategy_kind_from_string(const std::string& name);

/// Concrete strategy for `kind` under `scenario`. The original mechanism keeps
/// the scenario's z_bar and epsilon but forces theta_l = theta_r = 1.
Strategy make_strategy(StrategyKind kind, const Scenario& scenario);

struct RunManifest {
  std::filesystem::path config_path;
  std::filesystem::path output_directory;
  std::vector<StrategyKind> strategies{StrategyKind::time, StrategyKind::etm_original, StrategyKind::etm_improved};

  std::filesystem::path log_file(StrategyKind kind) const;
  std::filesystem::path trajectory_file(StrategyKind kind) const;
  std::filesystem::path summary_file() const;

  /// Rejects empty or duplicated strategy lists.
  void validate() const;
};

struct SummaryRow {
  std::string strategy;
  std::size_t triggers = 0;
  double min_iet = 0.0;
  double mean_iet = 0.0;
  double tau = 0.0;           // certified bound; the period for the time-triggered row
  double savings_pct = 0.0;   // relative to periodic sampling at the scenario period
};

struct StrategyRun {
  StrategyKind kind;
  SynthesisResult synthesis;
  SimLog log;
  SummaryRow summary;
};

/// Simulates each strategy against the same disturbance realization. Runs are
/// independent and execute concurrently.
std::vector<StrategyRun> simulate_strategies(const Scenario& scenario, const std::vector<StrategyKind>& kinds);

/// Simulates, then writes per-strategy log and trajectory CSVs followed by summary.csv.
std::vector<SummaryRow> run_comparison(const RunManifest& manifest, const Scenario& scenario);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void print_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Human-readable report of the synthesized controller and its inter-event-time bound.
std::string emit_certificate(const PlantMatrices& plant, const SynthesisResult& syn, const EtmDesign& design);

}  // namespace etlqr
