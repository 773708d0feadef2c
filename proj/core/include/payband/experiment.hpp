#pragma once

// Monte-Carlo fan-out over (policy, run) pairs and CSV output.
//
// Per policy, `<label>_aggregate.csv` holds exactly T rows:
//   t,n_runs,mean_cum_regret,stderr_cum_regret,
//   mean_cum_payment_disbursed,stderr_cum_payment_disbursed,
//   mean_cum_payment_abs,stderr_cum_payment_abs,
//   mean_cum_payment_vector,stderr_cum_payment_vector,
//   mean_cum_payment_arm0..arm{N-1}
// With full traces enabled, `<label>_trace.csv` holds T rows per run:
//   t,run,arm,inst_regret,cum_regret,inst_payment_disbursed,
//   cum_payment_disbursed,cum_payment_abs,budget_remaining

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "payband/config.hpp"
#include "payband/metrics.hpp"

namespace payband {

struct PolicyResult {
  PolicyConfig policy;
  std::vector<RunTrace> traces;  // ordered by run index
  AggregateCurves curves;
};

struct ExperimentResult {
  std::vector<PolicyResult> policies;  // config order
};

/// Runs every (policy, run) pair on up to `jobs` worker threads. Output does
/// not depend on `jobs`.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t jobs = 1);

/// File-system safe stem for a policy label.
std::string output_stem(const PolicyConfig& policy);

void write_aggregate_csv(std::ostream& out, const AggregateCurves& curves);
void write_trace_csv(std::ostream& out, const std::vector<RunTrace>& traces);

/// Writes the CSVs in (policy, file kind) order and returns their paths.
std::vector<std::filesystem::path> write_results(const ExperimentResult& result,
                                                 const std::filesystem::path& dir,
                                                 bool emit_full_trace);

/// Loads a dataset CSV and prints a summary (rows, d, class histogram) to
/// `summary` when given.
BanditDataset import_dataset(const std::filesystem::path& path, bool standardize_features,
                             std::size_t n_classes, std::ostream* summary = nullptr);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace payband
