#include "payband/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace payband {

bool PaymentVector::is_zero() const noexcept {
  return std::all_of(amounts_.begin(), amounts_.end(), [](double p) { return p == 0.0; });
}

double PaymentVector::total() const noexcept {
  return std::accumulate(amounts_.begin(), amounts_.end(), 0.0);
}

ArmIndex agent_choose(const std::vector<Vector>& estimates, const Vector& context,
                      const PaymentVector& payments) {
  if (estimates.size() != payments.size()) {
    throw DimensionMismatch("agent_choose: estimates and payments disagree on arm count");
  }
  std::vector<double> utility(estimates.size());
  double best = -INFINITY;
  for (std::size_t j = 0; j < estimates.size(); ++j) {
    utility[j] = dot(context, estimates[j]) + payments[j];
    best = std::max(best, utility[j]);
  }
  const double tol = kUtilityTieTolerance * std::max(1.0, std::abs(best));
  ArmIndex chosen = estimates.size();
  for (std::size_t j = 0; j < estimates.size(); ++j) {
    if (utility[j] < best - tol) continue;
    if (chosen == estimates.size() || payments[j] > payments[chosen]) chosen = j;
  }
  return chosen;
}

ArmIndex greedy_choose(const std::vector<Vector>& estimates, const Vector& context) {
  ArmIndex chosen = 0;
  double best = -INFINITY;
  for (std::size_t j = 0; j < estimates.size(); ++j) {
    const double u = dot(context, estimates[j]);
    if (u > best) {
      best = u;
      chosen = j;
    }
  }
  return chosen;
}

ArmIndex best_arm(const std::vector<Vector>& true_attrs, const Vector& context) {
  return greedy_choose(true_attrs, context);
}

double inst_regret(const std::vector<Vector>& true_attrs, const Vector& context, ArmIndex chosen) {
  const double best = dot(context, true_attrs[best_arm(true_attrs, context)]);
  return std::max(0.0, best - dot(context, true_attrs.at(chosen)));
}

}  // namespace payband
