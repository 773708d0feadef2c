#include <doctest.h>

#include <random>

#include "payband/model.hpp"

using namespace payband;

TEST_CASE("agent_choose picks the largest perceived utility") {
  const Vector theta{1.0, 0.0};
  const std::vector<Vector> est{{0.3, 0.0}, {0.5, 0.0}};
  CHECK(agent_choose(est, theta, PaymentVector({0.3, 0.0})) == 0);
  CHECK(agent_choose(est, theta, PaymentVector({0.0, 0.0})) == 1);
}

TEST_CASE("agent_choose tie rule") {
  const Vector theta{1.0, 0.0};
  const std::vector<Vector> est{{0.5, 0.0}, {0.5, 0.0}};
  CHECK(agent_choose(est, theta, PaymentVector({0.0, 0.0})) == 0);
  CHECK(agent_choose(est, theta, PaymentVector({0.0, 0.2})) == 1);

  // Equal utilities after payment: the paid arm wins.
  const std::vector<Vector> gap{{0.7, 0.0}, {0.4, 0.0}};
  CHECK(agent_choose(gap, theta, PaymentVector({0.0, 0.7 - 0.4})) == 1);
}

TEST_CASE("agent_choose is invariant to a constant payment shift") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<Vector> est(5, Vector(3));
    for (auto& e : est)
      for (double& x : e) x = normal(rng);
    Vector theta(3);
    for (double& x : theta) x = normal(rng);
    PaymentVector p(5);
    for (std::size_t i = 0; i < 5; ++i) p[i] = normal(rng);
    PaymentVector shifted = p;
    const double c = normal(rng);
    for (std::size_t i = 0; i < 5; ++i) shifted[i] += c;
    CHECK(agent_choose(est, theta, p) == agent_choose(est, theta, shifted));
  }
}

TEST_CASE("inst_regret examples") {
  const Vector theta{1.0};
  const std::vector<Vector> two{{0.8}, {0.3}};
  CHECK(inst_regret(two, theta, 0) == 0.0);
  CHECK(inst_regret(two, theta, 1) == doctest::Approx(0.5));
  const std::vector<Vector> three{{0.2}, {0.9}, {0.9}};
  CHECK(inst_regret(three, theta, 2) == 0.0);
  CHECK(inst_regret(three, theta, 1) == 0.0);
}

TEST_CASE("payment vector helpers") {
  PaymentVector p({0.5, -0.2, 0.0});
  CHECK(p.total() == doctest::Approx(0.3));
  CHECK_FALSE(p.is_zero());
  CHECK(PaymentVector(3).is_zero());
}
