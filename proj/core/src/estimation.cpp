#include "payband/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace payband {

EstimatorState::EstimatorState(ArmIndex arm, std::size_t dim, EstimatorMode mode,
                               double ridge_lambda)
    : arm_(arm), mode_(mode), lambda_(ridge_lambda), gram_(dim), moment_(dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw std::invalid_argument("EstimatorState: dimension must be in [1, 64]");
  }
  if (mode == EstimatorMode::OLS && ridge_lambda != 0.0) {
    throw std::invalid_argument("EstimatorState: OLS mode requires ridge_lambda = 0");
  }
  if (!(ridge_lambda >= 0.0) || !std::isfinite(ridge_lambda)) {
    throw std::invalid_argument("EstimatorState: ridge_lambda must be finite and >= 0");
  }
}

Matrix EstimatorState::regularized_gram() const {
  Matrix a = gram_;
  a.add_diagonal(lambda_);
  return a;
}

void EstimatorState::absorb(const Vector& context, double response) {
  if (context.size() != dim()) {
    throw DimensionMismatch("EstimatorState::absorb: context has wrong dimension");
  }
  gram_.add_outer(context);
  for (std::size_t i = 0; i < dim(); ++i) moment_[i] += response * context[i];
  ++count_;
}

Vector EstimatorState::raw_estimate() const { return solve_spd(regularized_gram(), moment_); }

Vector EstimatorState::estimate() const { return project_unit_ball(raw_estimate()); }

Vector EstimatorState::estimate_or_zero() const {
  try {
    return estimate();
  } catch (const SingularMatrix&) {
    return Vector(dim());
  }
}

EstimatorState absorb(EstimatorState state, const Vector& context, double response) {
  state.absorb(context, response);
  return state;
}

double confidence_radius(std::size_t dim, double lambda, double delta, std::size_t m,
                         std::size_t t) {
  const double log_term =
      std::log((1.0 + static_cast<double>(t) / lambda) / delta);
  return static_cast<double>(m) * std::sqrt(static_cast<double>(dim) * log_term) +
         std::sqrt(lambda);
}

ConfidenceWidth confidence_width(const EstimatorState& state, const Vector& context, double delta,
                                 std::size_t m, std::size_t t) {
  if (state.mode() != EstimatorMode::Ridge || !(state.ridge_lambda() > 0.0)) {
    throw std::invalid_argument("confidence_width: needs a ridge estimator with lambda > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("confidence_width: delta must lie in (0, 1)");
  }
  const double norm = quad_norm_inv(state.regularized_gram(), context);
  return ConfidenceWidth{state.arm(), norm * confidence_radius(state.dim(), state.ridge_lambda(),
                                                               delta, m, t),
                         delta};
}

}  // namespace payband
