#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "payband/environment.hpp"

using namespace payband;

TEST_CASE("FixedSequence indexing and exhaustion") {
  const ContextSource src(FixedSequence{{Vector{1.0, 0.0}, Vector{0.0, 1.0}}, false}, 1);
  CHECK(src.next_context(1) == Vector{0.0, 1.0});
  CHECK_THROWS_AS(src.next_context(2), ExhaustedSequence);

  const ContextSource cyc(FixedSequence{{Vector{1.0, 0.0}, Vector{0.0, 1.0}}, true}, 1);
  CHECK(cyc.next_context(5) == Vector{0.0, 1.0});
}

TEST_CASE("degenerate Gaussian returns the mean") {
  const ContextSource src(GaussianIID{Vector{0.2, -0.1}, 0.0}, 9);
  for (std::size_t t = 0; t < 10; ++t) CHECK(src.next_context(t) == Vector{0.2, -0.1});
}

TEST_CASE("generated contexts lie in the unit ball and are deterministic") {
  const ContextSource a(GaussianIID{Vector{0.5, 0.5, 0.5}, 1.0}, 42);
  const ContextSource b(GaussianIID{Vector{0.5, 0.5, 0.5}, 1.0}, 42);
  for (std::size_t t = 0; t < 2000; ++t) {
    const auto da = a.draw(t);
    CHECK(norm2(da.context) <= 1.0 + 1e-12);
    CHECK(da.context == b.draw(t).context);
    CHECK(da.raw == b.draw(t).raw);
  }
  // Random access matches sequential access.
  CHECK(a.draw(1234).context == b.draw(1234).context);
}

TEST_CASE("realize_reward") {
  const std::vector<Vector> attrs{{0.5, 0.1}, {0.9, 0.0}};
  Rng rng(1);
  const auto r = realize_reward(attrs, Vector{1.0, 0.0}, 0, 0.0, rng);
  CHECK(r.observed == 0.5);
  CHECK(r.true_mean == 0.5);

  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto d = realize_reward(attrs, Vector{0.6, 0.8}, 1, 1.0, rng);
    sum += d.observed - d.true_mean;
  }
  CHECK(std::abs(sum / n) <= 0.01);
}

TEST_CASE("covariate_diversity_report") {
  CHECK(covariate_diversity_report({Vector{1.0, 0.0}, Vector{0.0, 1.0}}) == doctest::Approx(0.5));
  CHECK(covariate_diversity_report({Vector{0.6, 0.8}, Vector{0.6, 0.8}, Vector{0.6, 0.8}}) ==
        doctest::Approx(0.0).scale(1.0));

  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  const Vector base{0.5, 0.5, 0.5, 0.5};
  std::vector<Vector> perturbed;
  for (int i = 0; i < 10000; ++i) {
    Vector v = base;
    for (double& x : v) x += normal(rng);
    perturbed.push_back(v);
  }
  CHECK(covariate_diversity_report(perturbed) >= 0.5);

  const ContextSource src(GaussianIID{Vector{0.3, 0.0, -0.2}, 0.4}, 3);
  std::vector<Vector> ctx;
  for (std::size_t t = 0; t < 300; ++t) ctx.push_back(src.next_context(t));
  CHECK(covariate_diversity_report(ctx) > 0.0);
}

TEST_CASE("CSV reader") {
  std::istringstream toy("1.0,2.0,0\n3.0,4.0,1\n5.0,6.5,1\n");
  const auto ds = read_dataset_csv(toy, 2, false);
  CHECK(ds.rows.size() == 3);
  CHECK(ds.dim() == 2);
  CHECK(ds.rows[2].label == 1);
  CHECK(ds.rows[2].features == Vector{5.0, 6.5});
  CHECK(ds.class_histogram() == std::vector<std::size_t>{1, 2});

  std::istringstream header("f1,f2,label\n1,2,0\n3,4,1\n");
  CHECK(read_dataset_csv(header, 2, false).rows.size() == 2);

  std::istringstream bad_label("1,2,0\n3,4,5\n");
  try {
    read_dataset_csv(bad_label, 2, false);
    FAIL("expected DatasetError");
  } catch (const DatasetError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }

  std::istringstream bad_number("1,2,0\n3,x,1\n");
  try {
    read_dataset_csv(bad_number, 2, false);
    FAIL("expected DatasetError");
  } catch (const DatasetError& e) {
    CHECK(std::string(e.what()).find("row 2, column 2") != std::string::npos);
  }

  std::istringstream ragged("1,2,0\n3,1\n");
  CHECK_THROWS_AS(read_dataset_csv(ragged, 2, false), DimensionMismatch);
}

TEST_CASE("standardization") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal(3.0, 2.0);
  std::ostringstream csv;
  for (int i = 0; i < 500; ++i) csv << normal(rng) << ',' << 10.0 * normal(rng) << ',' << i % 2 << '\n';
  std::istringstream in(csv.str());
  const auto ds = read_dataset_csv(in, 2, true);
  CHECK(ds.standardized);
  for (std::size_t c = 0; c < 2; ++c) {
    double mean = 0.0, sq = 0.0;
    for (const auto& r : ds.rows) mean += r.features[c];
    mean /= ds.rows.size();
    for (const auto& r : ds.rows) sq += (r.features[c] - mean) * (r.features[c] - mean);
    CHECK(std::abs(mean) <= 1e-6);
    CHECK(std::sqrt(sq / ds.rows.size()) == doctest::Approx(1.0).epsilon(1e-2));
  }
}

TEST_CASE("dataset adapter rewards and regret") {
  auto ds = std::make_shared<BanditDataset>();
  ds->n_classes = 2;
  for (int i = 0; i < 20; ++i)
    ds->rows.push_back({Vector{0.1 * i, 0.5}, static_cast<ArmIndex>(i % 2)});

  CHECK_THROWS_AS(dataset_to_instance(ds, 21, 1), DatasetError);
  auto env = dataset_to_instance(ds, 20, 1);
  Rng rng(0);

  std::set<double> seen;
  double regret_sum = 0.0;
  int misclassified = 0;
  for (std::size_t t = 0; t < 20; ++t) {
    const auto draw = env->context(t);
    REQUIRE(draw.label.has_value());
    seen.insert(draw.raw[0]);
    const ArmIndex label = *draw.label;
    CHECK(env->reward(draw, label, rng).observed == 1.0);
    CHECK(env->regret(draw, label) == 0.0);
    CHECK(env->reward(draw, 1 - label, rng).observed == 0.0);
    CHECK(env->regret(draw, 1 - label) == 1.0);
    const ArmIndex pulled = t % 3 == 0 ? 0 : 1;
    regret_sum += env->regret(draw, pulled);
    misclassified += pulled != label;
  }
  CHECK(seen.size() == 20);  // each row once per epoch
  CHECK(regret_sum == misclassified);

  auto ragged = std::make_shared<BanditDataset>(*ds);
  ragged->rows.push_back({Vector{1.0}, 0});
  CHECK_THROWS_AS(dataset_to_instance(ragged, 5, 1), DimensionMismatch);
}
