#pragma once

// Platform strategies. Every policy displays one estimate per arm, proposes a
// payment vector each round, and absorbs the outcome afterwards. Policies see
// contexts, their own payments, chosen arms and observed rewards; they never
// see ground-truth attributes.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "payband/estimation.hpp"
#include "payband/linalg.hpp"
#include "payband/model.hpp"
#include "payband/rng.hpp"

namespace payband {

enum class PolicyKind {
  NoPayments,
  CBwHeterogeniety,
  CBwPayments,
  CBChainedUnrestricted,
  CBChainedRestricted,
};

std::string_view to_string(PolicyKind kind) noexcept;
std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept;

inline constexpr double kDefaultSigmaPay = 1.0;
inline constexpr double kDefaultLinUcbAlpha = 1.0;

struct PolicyConfig {
  PolicyKind kind = PolicyKind::NoPayments;
  /// Output label; defaults to the kind name.
  std::string name;
  double sigma_pay = kDefaultSigmaPay;
  double ridge_lambda = kDefaultRidgeLambda;
  double delta = kDefaultDelta;
  double linucb_alpha = kDefaultLinUcbAlpha;
  /// Required for CBChainedRestricted, rejected elsewhere.
  std::optional<double> budget;
  /// Per-policy warm-start length; falls back to the instance value.
  std::optional<std::size_t> init_explore_m;
  /// NoPayments only: OLS unless set to Ridge.
  std::optional<EstimatorMode> estimator;

  std::string label() const { return name.empty() ? std::string(to_string(kind)) : name; }
};

/// Estimator mode each policy kind runs with.
EstimatorMode estimator_mode_for(const PolicyConfig& config) noexcept;

struct ChainedSet {
  ArmIndex anchor = 0;
  std::vector<ArmIndex> members;  // sorted ascending, contains anchor

  bool contains(ArmIndex arm) const noexcept;
};

struct HeterogeneityPayment {
  PaymentVector payments;
  Vector zeta;
};

/// p_i = zeta . estimate_i with one zeta ~ Normal(0, sigma^2 I) per round.
/// The current context is not an input.
HeterogeneityPayment het_calc_payment(const std::vector<Vector>& estimates, Rng& rng,
                                      double sigma_pay);

/// Appends (context + zeta, y + p_chosen) to the chosen arm's regression.
/// The perturbed context is not projected.
void het_update(EstimatorState& state, const Vector& context, const Vector& zeta, double observed,
                double payment_chosen);

/// Zero unless the base algorithm disagrees with the greedy choice; then only
/// the base arm is paid max((mu_greedy - mu_base) . context, 0).
PaymentVector wrap_calc_payment(const std::vector<Vector>& estimates, const Vector& context,
                                ArmIndex base_choice, ArmIndex greedy_choice);

/// Disjoint-model LinUCB: argmax context . mu_i + alpha |context|_{A_i^{-1}},
/// lowest index on ties.
ArmIndex linucb_choose(const std::vector<EstimatorState>& states, const Vector& context,
                       double alpha);
ArmIndex linucb_choose(const std::vector<EstimatorState>& states,
                       const std::vector<Vector>& estimates, const Vector& context, double alpha);

/// Arms whose [e - w, e + w] intervals connect to the anchor's interval
/// through a chain of pairwise overlaps (transitive closure).
ChainedSet build_chain(const std::vector<double>& widths, const std::vector<double>& point_estimates,
                       ArmIndex anchor);

struct ChainedPayment {
  PaymentVector payments;
  ArmIndex target = 0;
  double offered = 0.0;
  std::optional<double> budget;
};

/// Picks j uniformly from the chained set and offers e_anchor - e_j on it.
/// With a budget, the offer is clamped to the remaining budget and deducted
/// from it; a nonpositive budget yields the zero vector without drawing.
ChainedPayment chained_payment(const ChainedSet& chain, const std::vector<double>& point_estimates,
                               Rng& rng, std::optional<double> budget = std::nullopt);

/// Warm-start arm for 1-based round t.
constexpr ArmIndex round_robin_arm(std::size_t t, std::size_t n_arms) noexcept {
  return (t - 1) % n_arms;
}

class Policy {
 public:
  Policy(std::size_t n_arms, std::size_t dim, PolicyConfig config, std::size_t init_explore_m,
         std::uint64_t seed);
  virtual ~Policy() = default;

  Policy(const Policy&) = delete;
  Policy& operator=(const Policy&) = delete;

  const PolicyConfig& config() const noexcept { return config_; }
  std::size_t n_arms() const noexcept { return estimators_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t init_explore_m() const noexcept { return init_explore_m_; }

  /// Estimates shown to the next agent.
  const std::vector<Vector>& displayed_estimates() const noexcept { return estimates_; }
  const EstimatorState& estimator(ArmIndex arm) const { return estimators_.at(arm); }

  /// Warm-start observation on a mandated arm: plain (context, reward) absorb.
  void observe_forced(const Vector& context, ArmIndex arm, double observed);

  /// Payment vector for 1-based round t.
  virtual PaymentVector calc_payment(std::size_t t, const Vector& context) = 0;

  /// Absorbs the round outcome. `payments` is the vector returned by the
  /// preceding calc_payment call.
  virtual void update(const Vector& context, ArmIndex chosen, double observed,
                      const PaymentVector& payments) = 0;

  virtual std::optional<double> budget_remaining() const { return std::nullopt; }

 protected:
  /// Absorbs one observation and refreshes that arm's displayed estimate.
  void absorb(ArmIndex arm, const Vector& context, double response);
  EstimatorState& mutable_estimator(ArmIndex arm) { return estimators_.at(arm); }
  void refresh(ArmIndex arm);
  Rng& rng() noexcept { return rng_; }
  const std::vector<EstimatorState>& estimators() const noexcept { return estimators_; }

 private:
  PolicyConfig config_;
  std::size_t dim_;
  std::size_t init_explore_m_;
  std::vector<EstimatorState> estimators_;
  std::vector<Vector> estimates_;
  Rng rng_;
};

/// Passive platform: zero payments, greedy agents.
class NoPaymentsPolicy final : public Policy {
 public:
  using Policy::Policy;
  PaymentVector calc_payment(std::size_t t, const Vector& context) override;
  void update(const Vector& context, ArmIndex chosen, double observed,
              const PaymentVector& payments) override;
};

/// Random linear payments that act as a Gaussian perturbation of the context.
class HeterogeneityPolicy final : public Policy {
 public:
  using Policy::Policy;
  PaymentVector calc_payment(std::size_t t, const Vector& context) override;
  void update(const Vector& context, ArmIndex chosen, double observed,
              const PaymentVector& payments) override;

  const Vector& last_zeta() const noexcept { return zeta_; }

 private:
  Vector zeta_;
};

/// Pays agents to follow LinUCB whenever it disagrees with their greedy choice.
class LinUcbPaymentsPolicy final : public Policy {
 public:
  using Policy::Policy;
  PaymentVector calc_payment(std::size_t t, const Vector& context) override;
  void update(const Vector& context, ArmIndex chosen, double observed,
              const PaymentVector& payments) override;

  ArmIndex last_base_choice() const noexcept { return base_; }
  ArmIndex last_greedy_choice() const noexcept { return greedy_; }

 private:
  ArmIndex base_ = 0;
  ArmIndex greedy_ = 0;
};

/// Randomizes the agent over the chained set of its greedy arm. With a budget
/// the offers stop once the budget is spent.
class ChainedPolicy final : public Policy {
 public:
  ChainedPolicy(std::size_t n_arms, std::size_t dim, PolicyConfig config,
                std::size_t init_explore_m, std::uint64_t seed);
  PaymentVector calc_payment(std::size_t t, const Vector& context) override;
  void update(const Vector& context, ArmIndex chosen, double observed,
              const PaymentVector& payments) override;
  std::optional<double> budget_remaining() const override { return budget_; }

  const ChainedSet& last_chain() const noexcept { return chain_; }

 private:
  std::optional<double> budget_;
  ChainedSet chain_;
};

std::unique_ptr<Policy> make_policy(std::size_t n_arms, std::size_t dim, const PolicyConfig& config,
                                    std::size_t init_explore_m, std::uint64_t seed);

}  // namespace payband
