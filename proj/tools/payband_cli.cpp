// payband: command-line driver for incentivized-exploration experiments.
//
//   payband run --config <file> [--jobs N] [--out DIR]
//   payband validate --config <file>
//   payband import --csv <file> [--standardize] --classes K
//   payband preset <fig1|fig2-like> [--dataset <file>] [--out DIR] [--jobs N]
//
// Exit codes: 0 success, 2 invalid config or input, 3 runtime failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "payband/config.hpp"
#include "payband/experiment.hpp"

#ifndef PAYBAND_PRESET_DIR
#define PAYBAND_PRESET_DIR "presets"
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

void print_diagnostics(const std::vector<payband::Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << d.to_string() << '\n';
}

/// Loads, applies overrides and validates. Returns nullopt after printing
/// diagnostics when the config is unusable.
std::optional<payband::ExperimentConfig> prepare(const fs::path& path,
                                                 const std::string& dataset_override) {
  auto parsed = payband::load_config(path);
  print_diagnostics(parsed.diagnostics);
  if (!parsed.config) return std::nullopt;
  auto config = std::move(*parsed.config);
  if (!payband::apply_env_overrides(config)) {
    std::cerr << "error: PAYBAND_SEED: expected an unsigned integer\n";
    return std::nullopt;
  }
  if (!dataset_override.empty()) {
    try {
      payband::override_dataset(config, dataset_override);
    } catch (const std::exception& e) {
      std::cerr << "error: --dataset: " << e.what() << '\n';
      return std::nullopt;
    }
  }
  const auto diags = payband::validate_config(config);
  print_diagnostics(diags);
  if (payband::has_errors(diags)) return std::nullopt;
  return config;
}

int execute(const payband::ExperimentConfig& config, const std::string& out_override,
            std::size_t jobs) {
  const fs::path out_dir = out_override.empty() ? config.output_dir : fs::path(out_override);
  try {
    const auto result = payband::run_experiment(config, jobs);
    const auto files = payband::write_results(result, out_dir, config.emit_full_trace);
    for (const auto& pr : result.policies) {
      const auto& c = pr.curves;
      std::cout << pr.policy.label() << ": runs=" << c.n_runs << " T=" << c.horizon
                << " mean_cum_regret=" << payband::format_double(c.mean_cum_regret.back())
                << " mean_cum_payment=" << payband::format_double(c.mean_cum_payment.back())
                << '\n';
    }
    for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incentivized exploration in linear contextual bandits"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::size_t jobs = 1;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("--config", config_path, "Experiment JSON")->required();
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");

  auto* validate = app.add_subcommand("validate", "Check a config and print diagnostics");
  validate->add_option("--config", config_path, "Experiment JSON")->required();

  std::string csv_path;
  bool standardize = false;
  std::size_t classes = 0;
  auto* import = app.add_subcommand("import", "Parse a dataset CSV and print a summary");
  import->add_option("--csv", csv_path, "Dataset CSV (f_1,...,f_d,label)")->required();
  import->add_flag("--standardize", standardize, "Z-score every feature column");
  import->add_option("--classes", classes, "Number of class labels")->required();

  std::string preset_name;
  std::string dataset_path;
  std::string preset_dir = PAYBAND_PRESET_DIR;
  auto* preset = app.add_subcommand("preset", "Run a checked-in experiment preset");
  preset->add_option("name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2-like"}));
  preset->add_option("--dataset", dataset_path, "Dataset CSV replacing the bundled one");
  preset->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  preset->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  preset->add_option("--preset-dir", preset_dir, "Directory holding preset JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (*run) {
    const auto config = prepare(config_path, {});
    if (!config) return kExitInvalid;
    return execute(*config, out_dir, jobs);
  }
  if (*validate) {
    const auto config = prepare(config_path, {});
    if (!config) return kExitInvalid;
    std::cout << "config OK: " << config->policies.size() << " policies, " << config->n_runs
              << " runs, T=" << config->instance.horizon << '\n';
    return kExitOk;
  }
  if (*import) {
    try {
      payband::import_dataset(csv_path, standardize, classes, &std::cout);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitInvalid;
    }
    return kExitOk;
  }
  if (*preset) {
    const fs::path path = fs::path(preset_dir) / (preset_name + ".json");
    const auto config = prepare(path, dataset_path);
    if (!config) return kExitInvalid;
    return execute(*config, out_dir, jobs);
  }
  return kExitInvalid;
}
