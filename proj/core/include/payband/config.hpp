#pragma once

// Experiment configuration: a single JSON document.
//
//   {
//     "instance": {
//       "n_arms": 8, "dim": 4, "horizon": 800,
//       "true_attrs": [[...], ...],          // omitted for dataset instances
//       "noise_std": 0.1,
//       "init_explore_m": 32,
//       "master_seed": 20190601,
//       "warmup_responses": [...],           // optional, overrides warm-start feedback
//       "context_source": {"kind": "GaussianIID", "mean": [...], "std": 0.5}
//                       | {"kind": "FixedSequence", "contexts": [[...]], "cycle": true}
//                       | {"kind": "DatasetReplay", "path": "x.csv", "n_classes": 2,
//                          "standardize": true, "header": false, "with_replacement": false}
//     },
//     "policies": [{"kind": "CBwHeterogeniety", "sigma_pay": 1.0}, ...],
//     "n_runs": 10,
//     "output_dir": "out/fig1",
//     "emit_full_trace": false
//   }

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "payband/environment.hpp"
#include "payband/policies.hpp"

namespace payband {

struct DatasetSourceInfo {
  std::filesystem::path path;
  std::size_t n_classes = 2;
  bool standardize = true;
  std::optional<bool> header;
};

struct InstanceSpec {
  std::size_t n_arms = 0;
  std::size_t dim = 0;
  std::size_t horizon = 0;
  std::vector<Vector> true_attrs;  // empty for dataset instances
  double noise_std = 0.0;
  ContextSourceSpec context_source;
  std::size_t init_explore_m = 0;
  std::uint64_t master_seed = 0;
  /// Feedback reported during warm-start rounds in place of the realized
  /// reward. Lets an adversary seed misleading initial estimates.
  std::vector<double> warmup_responses;
  std::optional<DatasetSourceInfo> dataset_source;

  bool is_dataset() const noexcept { return std::holds_alternative<DatasetReplay>(context_source); }
};

struct ExperimentConfig {
  InstanceSpec instance;
  std::vector<PolicyConfig> policies;
  std::size_t n_runs = 1;
  std::filesystem::path output_dir = "out";
  bool emit_full_trace = false;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string field;
  std::string message;
  std::string actual;

  std::string to_string() const;
};

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept;

struct ParsedConfig {
  std::optional<ExperimentConfig> config;
  std::vector<Diagnostic> diagnostics;
};

/// Structural parse. Relative dataset paths resolve against `base_dir`.
ParsedConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
/// Reads and parses a config file; JSON syntax errors carry line and column.
ParsedConfig load_config(const std::filesystem::path& path);

/// Semantic checks. An empty result means the config is valid.
std::vector<Diagnostic> validate_config(const ExperimentConfig& config);

/// Replaces the dataset file of a DatasetReplay instance and reloads it.
void override_dataset(ExperimentConfig& config, const std::filesystem::path& path);

/// Applies PAYBAND_SEED when set. Returns false when the variable is not an
/// unsigned integer.
bool apply_env_overrides(ExperimentConfig& config);

nlohmann::json to_json(const PolicyConfig& policy);

}  // namespace payband
