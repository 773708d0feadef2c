#include "payband/policies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace payband {

namespace {

constexpr std::array<std::pair<PolicyKind, std::string_view>, 5> kKindNames{{
    {PolicyKind::NoPayments, "NoPayments"},
    {PolicyKind::CBwHeterogeniety, "CBwHeterogeniety"},
    {PolicyKind::CBwPayments, "CBwPayments"},
    {PolicyKind::CBChainedUnrestricted, "CBChainedUnrestricted"},
    {PolicyKind::CBChainedRestricted, "CBChainedRestricted"},
}};

std::vector<double> point_estimates(const std::vector<Vector>& estimates, const Vector& context) {
  std::vector<double> e(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) e[i] = dot(context, estimates[i]);
  return e;
}

}  // namespace

std::string_view to_string(PolicyKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

EstimatorMode estimator_mode_for(const PolicyConfig& config) noexcept {
  switch (config.kind) {
    case PolicyKind::NoPayments:
      return config.estimator.value_or(EstimatorMode::OLS);
    case PolicyKind::CBwHeterogeniety:
      return EstimatorMode::OLS;
    case PolicyKind::CBwPayments:
    case PolicyKind::CBChainedUnrestricted:
    case PolicyKind::CBChainedRestricted:
      return EstimatorMode::Ridge;
  }
  return EstimatorMode::OLS;
}

bool ChainedSet::contains(ArmIndex arm) const noexcept {
  return std::binary_search(members.begin(), members.end(), arm);
}

HeterogeneityPayment het_calc_payment(const std::vector<Vector>& estimates, Rng& rng,
                                      double sigma_pay) {
  if (estimates.empty()) throw std::invalid_argument("het_calc_payment: no arms");
  HeterogeneityPayment out;
  out.zeta = Vector(estimates.front().size());
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& z : out.zeta) z = sigma_pay * normal(rng);
  out.payments = PaymentVector(estimates.size());
  for (std::size_t i = 0; i < estimates.size(); ++i) out.payments[i] = dot(out.zeta, estimates[i]);
  return out;
}

void het_update(EstimatorState& state, const Vector& context, const Vector& zeta, double observed,
                double payment_chosen) {
  state.absorb(context + zeta, observed + payment_chosen);
}

PaymentVector wrap_calc_payment(const std::vector<Vector>& estimates, const Vector& context,
                                ArmIndex base_choice, ArmIndex greedy_choice) {
  PaymentVector p(estimates.size());
  if (base_choice == greedy_choice) return p;
  p[base_choice] = std::max(dot(estimates.at(greedy_choice) - estimates.at(base_choice), context), 0.0);
  return p;
}

ArmIndex linucb_choose(const std::vector<EstimatorState>& states,
                       const std::vector<Vector>& estimates, const Vector& context, double alpha) {
  ArmIndex chosen = 0;
  double best = -INFINITY;
  for (std::size_t i = 0; i < states.size(); ++i) {
    double score = dot(context, estimates[i]);
    if (alpha != 0.0) score += alpha * quad_norm_inv(states[i].regularized_gram(), context);
    if (score > best) {
      best = score;
      chosen = i;
    }
  }
  return chosen;
}

ArmIndex linucb_choose(const std::vector<EstimatorState>& states, const Vector& context,
                       double alpha) {
  std::vector<Vector> estimates;
  estimates.reserve(states.size());
  for (const auto& s : states) estimates.push_back(s.estimate_or_zero());
  return linucb_choose(states, estimates, context, alpha);
}

ChainedSet build_chain(const std::vector<double>& widths, const std::vector<double>& point_estimates,
                       ArmIndex anchor) {
  const std::size_t n = point_estimates.size();
  if (widths.size() != n || anchor >= n) {
    throw std::invalid_argument("build_chain: inconsistent arm counts or anchor");
  }
  auto linked = [&](std::size_t i, std::size_t j) {
    const double lo = std::max(point_estimates[i] - widths[i], point_estimates[j] - widths[j]);
    const double hi = std::min(point_estimates[i] + widths[i], point_estimates[j] + widths[j]);
    return lo <= hi;
  };
  std::vector<bool> seen(n, false);
  std::vector<ArmIndex> frontier{anchor};
  seen[anchor] = true;
  while (!frontier.empty()) {
    const ArmIndex i = frontier.back();
    frontier.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && linked(i, j)) {
        seen[j] = true;
        frontier.push_back(j);
      }
    }
  }
  ChainedSet chain{anchor, {}};
  for (std::size_t j = 0; j < n; ++j) {
    if (seen[j]) chain.members.push_back(j);
  }
  return chain;
}

ChainedPayment chained_payment(const ChainedSet& chain, const std::vector<double>& point_estimates,
                               Rng& rng, std::optional<double> budget) {
  ChainedPayment out;
  out.payments = PaymentVector(point_estimates.size());
  out.budget = budget;
  out.target = chain.anchor;
  if (budget && *budget <= 0.0) return out;
  if (!chain.contains(chain.anchor)) throw std::invalid_argument("chained_payment: anchor not in set");

  std::uniform_int_distribution<std::size_t> pick(0, chain.members.size() - 1);
  const ArmIndex j = chain.members[pick(rng)];
  double p = point_estimates[chain.anchor] - point_estimates[j];
  if (budget) {
    p = std::min(p, *budget);
    out.budget = *budget - p;
  }
  out.payments[j] = p;
  out.target = j;
  out.offered = p;
  return out;
}

Policy::Policy(std::size_t n_arms, std::size_t dim, PolicyConfig config,
               std::size_t init_explore_m, std::uint64_t seed)
    : config_(std::move(config)), dim_(dim), init_explore_m_(init_explore_m), rng_(seed) {
  if (n_arms == 0) throw std::invalid_argument("Policy: need at least one arm");
  const EstimatorMode mode = estimator_mode_for(config_);
  const double lambda = mode == EstimatorMode::Ridge ? config_.ridge_lambda : 0.0;
  estimators_.reserve(n_arms);
  for (std::size_t i = 0; i < n_arms; ++i) estimators_.emplace_back(i, dim, mode, lambda);
  estimates_.reserve(n_arms);
  for (const auto& s : estimators_) estimates_.push_back(s.estimate_or_zero());
}

void Policy::observe_forced(const Vector& context, ArmIndex arm, double observed) {
  absorb(arm, context, observed);
}

void Policy::absorb(ArmIndex arm, const Vector& context, double response) {
  estimators_.at(arm).absorb(context, response);
  refresh(arm);
}

void Policy::refresh(ArmIndex arm) { estimates_.at(arm) = estimators_.at(arm).estimate_or_zero(); }

PaymentVector NoPaymentsPolicy::calc_payment(std::size_t, const Vector&) {
  return PaymentVector(n_arms());
}

void NoPaymentsPolicy::update(const Vector& context, ArmIndex chosen, double observed,
                              const PaymentVector&) {
  absorb(chosen, context, observed);
}

PaymentVector HeterogeneityPolicy::calc_payment(std::size_t, const Vector&) {
  auto drawn = het_calc_payment(displayed_estimates(), rng(), config().sigma_pay);
  zeta_ = std::move(drawn.zeta);
  return std::move(drawn.payments);
}

void HeterogeneityPolicy::update(const Vector& context, ArmIndex chosen, double observed,
                                 const PaymentVector& payments) {
  het_update(mutable_estimator(chosen), context, zeta_, observed, payments[chosen]);
  refresh(chosen);
}

PaymentVector LinUcbPaymentsPolicy::calc_payment(std::size_t, const Vector& context) {
  greedy_ = greedy_choose(displayed_estimates(), context);
  base_ = linucb_choose(estimators(), displayed_estimates(), context, config().linucb_alpha);
  return wrap_calc_payment(displayed_estimates(), context, base_, greedy_);
}

void LinUcbPaymentsPolicy::update(const Vector& context, ArmIndex chosen, double observed,
                                  const PaymentVector&) {
  absorb(chosen, context, observed);
}

ChainedPolicy::ChainedPolicy(std::size_t n_arms, std::size_t dim, PolicyConfig config,
                             std::size_t init_explore_m, std::uint64_t seed)
    : Policy(n_arms, dim, std::move(config), init_explore_m, seed) {
  if (this->config().kind == PolicyKind::CBChainedRestricted) {
    if (!this->config().budget) throw std::invalid_argument("CBChainedRestricted needs a budget");
    budget_ = *this->config().budget;
  }
}

PaymentVector ChainedPolicy::calc_payment(std::size_t t, const Vector& context) {
  if (budget_ && *budget_ <= 0.0) {
    chain_ = ChainedSet{};
    return PaymentVector(n_arms());
  }
  const auto& estimates = displayed_estimates();
  const ArmIndex anchor = greedy_choose(estimates, context);
  std::vector<double> widths(n_arms());
  for (std::size_t i = 0; i < n_arms(); ++i) {
    widths[i] = confidence_width(estimator(i), context, config().delta, init_explore_m(), t).width;
  }
  const auto e = point_estimates(estimates, context);
  chain_ = build_chain(widths, e, anchor);
  auto offer = chained_payment(chain_, e, rng(), budget_);
  budget_ = offer.budget;
  return std::move(offer.payments);
}

void ChainedPolicy::update(const Vector& context, ArmIndex chosen, double observed,
                           const PaymentVector&) {
  absorb(chosen, context, observed);
}

std::unique_ptr<Policy> make_policy(std::size_t n_arms, std::size_t dim, const PolicyConfig& config,
                                    std::size_t init_explore_m, std::uint64_t seed) {
  switch (config.kind) {
    case PolicyKind::NoPayments:
      return std::make_unique<NoPaymentsPolicy>(n_arms, dim, config, init_explore_m, seed);
    case PolicyKind::CBwHeterogeniety:
      return std::make_unique<HeterogeneityPolicy>(n_arms, dim, config, init_explore_m, seed);
    case PolicyKind::CBwPayments:
      return std::make_unique<LinUcbPaymentsPolicy>(n_arms, dim, config, init_explore_m, seed);
    case PolicyKind::CBChainedUnrestricted:
    case PolicyKind::CBChainedRestricted:
      return std::make_unique<ChainedPolicy>(n_arms, dim, config, init_explore_m, seed);
  }
  throw std::invalid_argument("make_policy: unknown policy kind");
}

}  // namespace payband
