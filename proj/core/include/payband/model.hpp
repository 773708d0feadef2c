#pragma once

// Shared domain types for one platform/agent interaction round.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "payband/linalg.hpp"

namespace payband {

using ArmIndex = std::size_t;

/// Per-arm displayed payments for one round. Negative entries are penalties.
class PaymentVector {
 public:
  PaymentVector() = default;
  explicit PaymentVector(std::size_t n_arms) : amounts_(n_arms, 0.0) {}
  explicit PaymentVector(std::vector<double> amounts) : amounts_(std::move(amounts)) {}

  std::size_t size() const noexcept { return amounts_.size(); }
  double& operator[](ArmIndex i) noexcept { return amounts_[i]; }
  double operator[](ArmIndex i) const noexcept { return amounts_[i]; }
  const std::vector<double>& amounts() const noexcept { return amounts_; }

  bool is_zero() const noexcept;
  /// Sum over all entries of the displayed vector.
  double total() const noexcept;

  friend bool operator==(const PaymentVector&, const PaymentVector&) = default;

 private:
  std::vector<double> amounts_;
};

/// Complete log of one round. `t` is 1-based.
struct RoundRecord {
  std::size_t t = 0;
  Vector context;
  PaymentVector payments;
  ArmIndex chosen_arm = 0;
  std::vector<Vector> displayed_estimates;
  double observed_reward = 0.0;
  double true_mean_reward = 0.0;
  double inst_regret = 0.0;
  double payment_paid = 0.0;
  std::optional<double> budget_remaining;
  // Warm-start rounds pull arms round-robin by mandate rather than by the
  // agent's argmax, so the rationality replay skips them.
  bool forced = false;
};

/// Rows of the design matrix and the responses for one arm.
struct ArmHistory {
  ArmIndex arm = 0;
  std::vector<Vector> contexts;
  std::vector<double> responses;

  void append(Vector context, double response) {
    contexts.push_back(std::move(context));
    responses.push_back(response);
  }
  std::size_t size() const noexcept { return contexts.size(); }
};

/// Utilities within this relative distance of the best are treated as tied.
inline constexpr double kUtilityTieTolerance = 1e-12;

/// The myopic agent: argmax of context . estimate_j + payment_j. Ties go to the
/// larger payment, then to the lowest index.
ArmIndex agent_choose(const std::vector<Vector>& estimates, const Vector& context,
                      const PaymentVector& payments);

/// Greedy choice on estimates alone (no payments); lowest index on ties.
ArmIndex greedy_choose(const std::vector<Vector>& estimates, const Vector& context);

/// max_j context . mu_j - context . mu_chosen, never negative.
double inst_regret(const std::vector<Vector>& true_attrs, const Vector& context, ArmIndex chosen);

/// Index of an arm with the largest true mean reward (lowest index on ties).
ArmIndex best_arm(const std::vector<Vector>& true_attrs, const Vector& context);

}  // namespace payband
