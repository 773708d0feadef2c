#pragma once

// Context streams, reward realization, and the supervised-dataset adapter.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "payband/linalg.hpp"
#include "payband/model.hpp"
#include "payband/rng.hpp"

namespace payband {

class ExhaustedSequence : public std::out_of_range {
 public:
  explicit ExhaustedSequence(const std::string& what) : std::out_of_range(what) {}
};

class DatasetError : public std::runtime_error {
 public:
  explicit DatasetError(const std::string& what) : std::runtime_error(what) {}
};

struct LabeledRow {
  Vector features;
  ArmIndex label = 0;
};

struct BanditDataset {
  std::vector<LabeledRow> rows;
  std::size_t n_classes = 0;
  bool standardized = false;

  std::size_t dim() const noexcept { return rows.empty() ? 0 : rows.front().features.size(); }
  std::vector<std::size_t> class_histogram() const;
};

/// Per-column z-score. Constant columns are centred and left at zero.
void standardize(BanditDataset& dataset);

/// Reads `f_1,...,f_d,label` rows. With `has_header` unset, a first line that
/// does not parse as numbers is taken as a header. Throws DatasetError with the
/// 1-based row and column of the offending field.
BanditDataset read_dataset_csv(std::istream& in, std::size_t n_classes, bool standardize_features,
                               std::optional<bool> has_header = std::nullopt);
BanditDataset load_dataset_csv(const std::filesystem::path& path, std::size_t n_classes,
                               bool standardize_features,
                               std::optional<bool> has_header = std::nullopt);

struct FixedSequence {
  std::vector<Vector> contexts;
  bool cycle = false;
};

struct GaussianIID {
  Vector mean;
  double std = 0.0;
};

struct DatasetReplay {
  std::shared_ptr<const BanditDataset> dataset;
  bool with_replacement = false;
};

using ContextSourceSpec = std::variant<FixedSequence, GaussianIID, DatasetReplay>;

/// One round's context. `raw` is the generated vector before unit-ball
/// projection; `context` is what agents and policies see.
struct ContextDraw {
  Vector raw;
  Vector context;
  std::optional<ArmIndex> label;
};

/// Deterministic context stream: draw(t) depends only on (spec, seed, t).
class ContextSource {
 public:
  ContextSource(ContextSourceSpec spec, std::uint64_t seed);

  /// Round index t is 0-based here.
  ContextDraw draw(std::size_t t) const;
  Vector next_context(std::size_t t) const { return draw(t).context; }

  const ContextSourceSpec& spec() const noexcept { return spec_; }

 private:
  ContextSourceSpec spec_;
  std::uint64_t seed_;
  std::vector<std::size_t> order_;  // DatasetReplay without replacement
};

struct RewardDraw {
  double observed = 0.0;
  double true_mean = 0.0;
};

/// y = context . mu_chosen + eta, eta ~ Normal(0, noise_std^2).
RewardDraw realize_reward(const std::vector<Vector>& true_attrs, const Vector& context,
                          ArmIndex chosen, double noise_std, Rng& rng);

/// The environment side of a run: contexts plus reward and regret oracles.
/// Policies never see this object.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::size_t n_arms() const = 0;
  virtual std::size_t dim() const = 0;
  virtual ContextDraw context(std::size_t t) const = 0;
  virtual RewardDraw reward(const ContextDraw& draw, ArmIndex chosen, Rng& rng) const = 0;
  virtual double regret(const ContextDraw& draw, ArmIndex chosen) const = 0;
};

/// Linear rewards against ground-truth arm attributes.
class LinearEnvironment final : public Environment {
 public:
  LinearEnvironment(std::vector<Vector> true_attrs, double noise_std, ContextSource source);

  std::size_t n_arms() const override { return true_attrs_.size(); }
  std::size_t dim() const override { return true_attrs_.front().size(); }
  ContextDraw context(std::size_t t) const override { return source_.draw(t); }
  RewardDraw reward(const ContextDraw& draw, ArmIndex chosen, Rng& rng) const override;
  double regret(const ContextDraw& draw, ArmIndex chosen) const override;

  const std::vector<Vector>& true_attrs() const noexcept { return true_attrs_; }

 private:
  std::vector<Vector> true_attrs_;
  double noise_std_;
  ContextSource source_;
};

/// Classification rows replayed as contexts; one arm per class, reward is the
/// label indicator (plus optional noise) and regret is 1 on misclassification.
class DatasetEnvironment final : public Environment {
 public:
  DatasetEnvironment(std::shared_ptr<const BanditDataset> dataset, std::uint64_t shuffle_seed,
                     double noise_std = 0.0, bool with_replacement = false);

  std::size_t n_arms() const override { return dataset_->n_classes; }
  std::size_t dim() const override { return dataset_->dim(); }
  ContextDraw context(std::size_t t) const override { return source_.draw(t); }
  RewardDraw reward(const ContextDraw& draw, ArmIndex chosen, Rng& rng) const override;
  double regret(const ContextDraw& draw, ArmIndex chosen) const override;

 private:
  std::shared_ptr<const BanditDataset> dataset_;
  double noise_std_;
  ContextSource source_;
};

std::unique_ptr<DatasetEnvironment> dataset_to_instance(std::shared_ptr<const BanditDataset> dataset,
                                                        std::size_t horizon,
                                                        std::uint64_t shuffle_seed,
                                                        double noise_std = 0.0,
                                                        bool with_replacement = false);

/// Smallest eigenvalue of (1/n) sum x x^T over the given contexts.
double covariate_diversity_report(const std::vector<Vector>& contexts);

}  // namespace payband
