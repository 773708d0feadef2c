#pragma once

#include <cstddef>

#include "payband/linalg.hpp"
#include "payband/model.hpp"

namespace payband {

enum class EstimatorMode { OLS, Ridge };

inline constexpr double kDefaultRidgeLambda = 1.0;
inline constexpr double kDefaultDelta = 0.1;

/// Sufficient statistics of one arm's least-squares problem: the Gram matrix
/// sum x x^T and the moment vector sum y x. The ridge term is applied at solve
/// time and is never folded into `gram`.
class EstimatorState {
 public:
  EstimatorState(ArmIndex arm, std::size_t dim, EstimatorMode mode, double ridge_lambda = 0.0);

  static EstimatorState ols(ArmIndex arm, std::size_t dim) {
    return EstimatorState(arm, dim, EstimatorMode::OLS, 0.0);
  }
  static EstimatorState ridge(ArmIndex arm, std::size_t dim, double lambda = kDefaultRidgeLambda) {
    return EstimatorState(arm, dim, EstimatorMode::Ridge, lambda);
  }

  ArmIndex arm() const noexcept { return arm_; }
  std::size_t dim() const noexcept { return gram_.dim(); }
  EstimatorMode mode() const noexcept { return mode_; }
  double ridge_lambda() const noexcept { return lambda_; }
  std::size_t count() const noexcept { return count_; }
  const Matrix& gram() const noexcept { return gram_; }
  const Vector& moment() const noexcept { return moment_; }

  /// gram + lambda I.
  Matrix regularized_gram() const;

  void absorb(const Vector& context, double response);

  /// Solves (gram + lambda I) mu = moment, then projects onto the unit ball.
  /// Throws SingularMatrix when an OLS Gram matrix is rank deficient.
  Vector estimate() const;

  /// Unclipped least-squares solution.
  Vector raw_estimate() const;

  /// estimate(), or the zero vector while an OLS arm is not yet identifiable.
  Vector estimate_or_zero() const;

 private:
  ArmIndex arm_;
  EstimatorMode mode_;
  double lambda_;
  Matrix gram_;
  Vector moment_;
  std::size_t count_ = 0;
};

/// Returns a copy of `state` with one more observation.
EstimatorState absorb(EstimatorState state, const Vector& context, double response);

struct ConfidenceWidth {
  ArmIndex arm = 0;
  double width = 0.0;
  double delta = kDefaultDelta;
};

/// Self-normalized ridge bound on |context . (mu - mu_hat)|:
///   |context|_{(G + lambda I)^{-1}} * (m sqrt(d ln((1 + t/lambda)/delta)) + sqrt(lambda))
/// Requires a ridge-mode state with lambda > 0.
ConfidenceWidth confidence_width(const EstimatorState& state, const Vector& context, double delta,
                                 std::size_t m, std::size_t t);

/// The width multiplier m sqrt(d ln((1 + t/lambda)/delta)) + sqrt(lambda).
double confidence_radius(std::size_t dim, double lambda, double delta, std::size_t m,
                         std::size_t t);

}  // namespace payband
