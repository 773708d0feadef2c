#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "payband/model.hpp"
#include "payband/policies.hpp"

namespace payband {

class MixedConfig : public std::invalid_argument {
 public:
  explicit MixedConfig(const std::string& what) : std::invalid_argument(what) {}
};

struct RunTrace {
  std::vector<RoundRecord> records;  // t = 1..T, contiguous
  PolicyConfig policy;
  std::uint64_t seed = 0;
  std::size_t run_index = 0;

  std::size_t horizon() const noexcept { return records.size(); }
};

/// Prefix sums over one trace. Index k holds the total through round k + 1.
struct CumulativeCurves {
  std::vector<double> cum_regret;
  /// Sum of disbursed amounts: the chosen arm's payment only.
  std::vector<double> cum_payment;
  /// Sum of |disbursed| amounts.
  std::vector<double> cum_payment_abs;
  /// Sum over all displayed entries, paid or not.
  std::vector<double> cum_payment_vector;
  /// per_arm[i][k]: disbursed on arm i through round k + 1.
  std::vector<std::vector<double>> per_arm;
};

CumulativeCurves accumulate(const RunTrace& trace);

/// |total| / (N sqrt(2 T ln(N T))).
double payment_bound_ratio(double total_payment, std::size_t n_arms, std::size_t horizon);

struct AggregateCurves {
  std::size_t n_runs = 0;
  std::size_t horizon = 0;
  std::vector<double> mean_cum_regret, stderr_cum_regret;
  std::vector<double> mean_cum_payment, stderr_cum_payment;
  std::vector<double> mean_cum_payment_abs, stderr_cum_payment_abs;
  std::vector<double> mean_cum_payment_vector, stderr_cum_payment_vector;
  std::vector<std::vector<double>> per_arm_payment;  // mean curves, one per arm
};

/// Pointwise mean and standard error across runs. Throws MixedConfig when the
/// traces disagree on horizon or policy kind.
AggregateCurves aggregate(const std::vector<RunTrace>& traces);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> values);

}  // namespace payband
