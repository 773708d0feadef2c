#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "payband/metrics.hpp"

using namespace payband;

namespace {

RunTrace make_trace(const std::vector<double>& regrets, const std::vector<ArmIndex>& arms,
                    const std::vector<double>& paid, std::size_t n_arms = 2) {
  RunTrace tr;
  tr.policy.kind = PolicyKind::CBwHeterogeniety;
  for (std::size_t k = 0; k < regrets.size(); ++k) {
    RoundRecord r;
    r.t = k + 1;
    r.chosen_arm = arms[k];
    r.payments = PaymentVector(n_arms);
    r.payments[arms[k]] = paid[k];
    r.payment_paid = paid[k];
    r.inst_regret = regrets[k];
    tr.records.push_back(r);
  }
  return tr;
}

}  // namespace

TEST_CASE("accumulate examples") {
  const auto tr = make_trace({0.5, 0.0, 0.25}, {0, 1, 0}, {0.0, 0.0, 0.0});
  const auto c = accumulate(tr);
  CHECK(c.cum_regret == std::vector<double>{0.5, 0.5, 0.75});
  CHECK(c.cum_payment == std::vector<double>{0.0, 0.0, 0.0});

  const auto paid = make_trace({0, 0, 0, 0}, {0, 1, 1, 0}, {0.2, -0.5, 0.1, 0.3});
  const auto p = accumulate(paid);
  CHECK(p.cum_payment.back() == doctest::Approx(0.1));
  CHECK(p.cum_payment_abs.back() == doctest::Approx(1.1));
  CHECK(p.per_arm[0].back() + p.per_arm[1].back() == doctest::Approx(p.cum_payment.back()));
  CHECK(p.per_arm[1].back() == doctest::Approx(-0.4));
}

TEST_CASE("payment_bound_ratio") {
  CHECK(payment_bound_ratio(0.0, 8, 800) == 0.0);
  const double scale = 8.0 * std::sqrt(2.0 * 800.0 * std::log(8.0 * 800.0));
  CHECK(payment_bound_ratio(scale, 8, 800) == doctest::Approx(1.0));
  CHECK(payment_bound_ratio(-scale, 8, 800) == doctest::Approx(1.0));
}

TEST_CASE("aggregate") {
  const auto a = make_trace({1.0, 0.0, 1.0}, {0, 0, 0}, {0, 0, 0});
  const auto b = make_trace({0.0, 0.0, 1.0}, {0, 0, 0}, {0, 0, 0});

  const auto single = aggregate({a});
  CHECK(single.mean_cum_regret == accumulate(a).cum_regret);
  CHECK(single.stderr_cum_regret == std::vector<double>{0.0, 0.0, 0.0});

  const auto both = aggregate({a, b});
  CHECK(both.n_runs == 2);
  CHECK(both.mean_cum_regret[0] == doctest::Approx(0.5));
  CHECK(both.mean_cum_regret[2] == doctest::Approx(1.5));
  // sample sd of {1, 0} is 1/sqrt(2); stderr = sd / sqrt(2) = 0.5
  CHECK(both.stderr_cum_regret[0] == doctest::Approx(0.5));

  const auto swapped = aggregate({b, a});
  CHECK(swapped.mean_cum_regret == both.mean_cum_regret);
  CHECK(swapped.stderr_cum_regret == both.stderr_cum_regret);

  const auto shorter = make_trace({1.0}, {0}, {0});
  CHECK_THROWS_AS(aggregate({a, shorter}), MixedConfig);
  auto other = b;
  other.policy.kind = PolicyKind::NoPayments;
  CHECK_THROWS_AS(aggregate({a, other}), MixedConfig);
}

TEST_CASE("cumulative regret is nondecreasing and bounded") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> r(500);
  for (double& x : r) x = u(rng);
  const auto c = accumulate(make_trace(r, std::vector<ArmIndex>(500, 0), std::vector<double>(500, 0)));
  CHECK(std::is_sorted(c.cum_regret.begin(), c.cum_regret.end()));
  CHECK(c.cum_regret.back() <= 2.0 * 500);
}

TEST_CASE("loglog_slope and median") {
  const std::vector<double> x{1000, 2000, 4000, 8000};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::sqrt(v));
  CHECK(loglog_slope(x, y) == doctest::Approx(0.5));
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
}
