#include "payband/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace payband {

using nlohmann::json;

std::string Diagnostic::to_string() const {
  std::string out = severity == Severity::Error ? "error: " : "warning: ";
  out += field + ": " + message;
  if (!actual.empty()) out += " (actual: " + actual + ")";
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Reads typed fields out of a JSON object and records a diagnostic for every
// missing or mistyped key instead of throwing.
class Reader {
 public:
  explicit Reader(std::vector<Diagnostic>& diags) : diags_(diags) {}

  void error(const std::string& field, const std::string& msg, const std::string& actual = {}) {
    diags_.push_back({Severity::Error, field, msg, actual});
  }

  const json* get(const json& obj, const std::string& key, const std::string& path, bool required) {
    if (!obj.is_object()) {
      error(path, "expected an object", obj.type_name());
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) error(join(path, key), "required field is missing");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> number(const json& obj, const std::string& key, const std::string& path,
                               bool required) {
    const json* v = get(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_number()) {
      error(join(path, key), "expected a number", v->dump());
      return std::nullopt;
    }
    return v->get<double>();
  }

  std::optional<std::uint64_t> unsigned_int(const json& obj, const std::string& key,
                                            const std::string& path, bool required) {
    const json* v = get(obj, key, path, required);
    if (!v) return std::nullopt;
    const bool ok = v->is_number_unsigned() ||
                    (v->is_number_integer() && v->get<std::int64_t>() >= 0);
    if (!ok) {
      error(join(path, key), "expected a nonnegative integer", v->dump());
      return std::nullopt;
    }
    return v->get<std::uint64_t>();
  }

  std::optional<bool> boolean(const json& obj, const std::string& key, const std::string& path,
                              bool required) {
    const json* v = get(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) {
      error(join(path, key), "expected true or false", v->dump());
      return std::nullopt;
    }
    return v->get<bool>();
  }

  std::optional<std::string> string(const json& obj, const std::string& key,
                                    const std::string& path, bool required) {
    const json* v = get(obj, key, path, required);
    if (!v) return std::nullopt;
    if (!v->is_string()) {
      error(join(path, key), "expected a string", v->dump());
      return std::nullopt;
    }
    return v->get<std::string>();
  }

  std::optional<Vector> vector(const json& v, const std::string& path) {
    if (!v.is_array()) {
      error(path, "expected an array of numbers", v.dump());
      return std::nullopt;
    }
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        error(path + "[" + std::to_string(i) + "]", "expected a number", v[i].dump());
        return std::nullopt;
      }
      out[i] = v[i].get<double>();
    }
    return out;
  }

  std::optional<std::vector<Vector>> vectors(const json& v, const std::string& path) {
    if (!v.is_array()) {
      error(path, "expected an array of arrays", v.dump());
      return std::nullopt;
    }
    std::vector<Vector> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto row = vector(v[i], path + "[" + std::to_string(i) + "]");
      if (!row) return std::nullopt;
      out.push_back(std::move(*row));
    }
    return out;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  std::vector<Diagnostic>& diags_;
};

std::optional<ContextSourceSpec> parse_context_source(Reader& rd, const json& obj,
                                                      const std::string& path,
                                                      const std::filesystem::path& base_dir,
                                                      InstanceSpec& inst) {
  const auto kind = rd.string(obj, "kind", path, true);
  if (!kind) return std::nullopt;
  if (*kind == "FixedSequence") {
    FixedSequence fs;
    if (const json* c = rd.get(obj, "contexts", path, true)) {
      auto ctx = rd.vectors(*c, Reader::join(path, "contexts"));
      if (!ctx) return std::nullopt;
      fs.contexts = std::move(*ctx);
    } else {
      return std::nullopt;
    }
    fs.cycle = rd.boolean(obj, "cycle", path, false).value_or(false);
    return fs;
  }
  if (*kind == "GaussianIID") {
    GaussianIID g;
    if (const json* m = rd.get(obj, "mean", path, true)) {
      auto mean = rd.vector(*m, Reader::join(path, "mean"));
      if (!mean) return std::nullopt;
      g.mean = std::move(*mean);
    } else {
      return std::nullopt;
    }
    const auto sd = rd.number(obj, "std", path, true);
    if (!sd) return std::nullopt;
    g.std = *sd;
    return g;
  }
  if (*kind == "DatasetReplay") {
    DatasetSourceInfo info;
    const auto file = rd.string(obj, "path", path, true);
    if (!file) return std::nullopt;
    info.path = std::filesystem::path(*file);
    if (info.path.is_relative()) info.path = base_dir / info.path;
    info.n_classes = rd.unsigned_int(obj, "n_classes", path, false).value_or(2);
    info.standardize = rd.boolean(obj, "standardize", path, false).value_or(true);
    info.header = rd.boolean(obj, "header", path, false);
    DatasetReplay replay;
    replay.with_replacement = rd.boolean(obj, "with_replacement", path, false).value_or(false);
    try {
      replay.dataset = std::make_shared<const BanditDataset>(
          load_dataset_csv(info.path, info.n_classes, info.standardize, info.header));
    } catch (const std::exception& e) {
      rd.error(Reader::join(path, "path"), std::string("cannot load dataset: ") + e.what(),
               info.path.string());
      return std::nullopt;
    }
    inst.dataset_source = info;
    return replay;
  }
  rd.error(Reader::join(path, "kind"), "expected FixedSequence, GaussianIID or DatasetReplay",
           *kind);
  return std::nullopt;
}

std::optional<PolicyConfig> parse_policy(Reader& rd, const json& obj, const std::string& path) {
  PolicyConfig p;
  const auto kind = rd.string(obj, "kind", path, true);
  if (!kind) return std::nullopt;
  const auto parsed = parse_policy_kind(*kind);
  if (!parsed) {
    rd.error(Reader::join(path, "kind"), "unknown policy kind", *kind);
    return std::nullopt;
  }
  p.kind = *parsed;
  p.name = rd.string(obj, "name", path, false).value_or("");
  p.sigma_pay = rd.number(obj, "sigma_pay", path, false).value_or(kDefaultSigmaPay);
  p.ridge_lambda = rd.number(obj, "ridge_lambda", path, false).value_or(kDefaultRidgeLambda);
  p.delta = rd.number(obj, "delta", path, false).value_or(kDefaultDelta);
  p.linucb_alpha = rd.number(obj, "linucb_alpha", path, false).value_or(kDefaultLinUcbAlpha);
  p.budget = rd.number(obj, "budget", path, false);
  if (auto m = rd.unsigned_int(obj, "init_explore_m", path, false)) p.init_explore_m = *m;
  if (auto est = rd.string(obj, "estimator", path, false)) {
    if (*est == "ols") {
      p.estimator = EstimatorMode::OLS;
    } else if (*est == "ridge") {
      p.estimator = EstimatorMode::Ridge;
    } else {
      rd.error(Reader::join(path, "estimator"), "expected \"ols\" or \"ridge\"", *est);
    }
  }
  return p;
}

}  // namespace

ParsedConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  ParsedConfig out;
  Reader rd(out.diagnostics);
  if (!doc.is_object()) {
    rd.error("<root>", "expected a JSON object", doc.type_name());
    return out;
  }
  ExperimentConfig cfg;
  const json* inst = rd.get(doc, "instance", "", true);
  if (inst) {
    auto& in = cfg.instance;
    const std::string p = "instance";
    in.n_arms = rd.unsigned_int(*inst, "n_arms", p, false).value_or(0);
    in.dim = rd.unsigned_int(*inst, "dim", p, false).value_or(0);
    in.horizon = rd.unsigned_int(*inst, "horizon", p, true).value_or(0);
    in.noise_std = rd.number(*inst, "noise_std", p, false).value_or(0.0);
    in.init_explore_m = rd.unsigned_int(*inst, "init_explore_m", p, false).value_or(0);
    in.master_seed = rd.unsigned_int(*inst, "master_seed", p, false).value_or(0);
    if (const json* w = rd.get(*inst, "warmup_responses", p, false)) {
      if (auto v = rd.vector(*w, p + ".warmup_responses")) in.warmup_responses = v->raw();
    }
    if (const json* a = rd.get(*inst, "true_attrs", p, false)) {
      if (auto attrs = rd.vectors(*a, p + ".true_attrs")) in.true_attrs = std::move(*attrs);
    }
    if (const json* cs = rd.get(*inst, "context_source", p, true)) {
      if (auto src = parse_context_source(rd, *cs, p + ".context_source", base_dir, in)) {
        in.context_source = std::move(*src);
      }
    }
    if (in.is_dataset()) {
      const auto& ds = *std::get<DatasetReplay>(in.context_source).dataset;
      if (in.n_arms == 0) in.n_arms = ds.n_classes;
      if (in.dim == 0) in.dim = ds.dim();
    } else {
      if (in.n_arms == 0) in.n_arms = in.true_attrs.size();
      if (in.dim == 0 && !in.true_attrs.empty()) in.dim = in.true_attrs.front().size();
    }
  }
  if (const json* pols = rd.get(doc, "policies", "", true)) {
    if (!pols->is_array()) {
      rd.error("policies", "expected an array", pols->type_name());
    } else {
      for (std::size_t i = 0; i < pols->size(); ++i) {
        if (auto pc = parse_policy(rd, (*pols)[i], "policies[" + std::to_string(i) + "]")) {
          cfg.policies.push_back(std::move(*pc));
        }
      }
    }
  }
  cfg.n_runs = rd.unsigned_int(doc, "n_runs", "", false).value_or(1);
  if (auto dir = rd.string(doc, "output_dir", "", false)) cfg.output_dir = *dir;
  cfg.emit_full_trace = rd.boolean(doc, "emit_full_trace", "", false).value_or(false);

  if (!has_errors(out.diagnostics)) out.config = std::move(cfg);
  return out;
}

ParsedConfig load_config(const std::filesystem::path& path) {
  ParsedConfig out;
  std::ifstream in(path);
  if (!in) {
    out.diagnostics.push_back({Severity::Error, path.string(), "cannot open config file", ""});
    return out;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    out.diagnostics.push_back({Severity::Error,
                               path.string() + ":" + std::to_string(line) + ":" +
                                   std::to_string(col),
                               "JSON syntax error", e.what()});
    return out;
  }
  return parse_config(doc, path.parent_path());
}

std::vector<Diagnostic> validate_config(const ExperimentConfig& config) {
  std::vector<Diagnostic> diags;
  auto error = [&](std::string field, std::string msg, std::string actual = {}) {
    diags.push_back({Severity::Error, std::move(field), std::move(msg), std::move(actual)});
  };
  auto warn = [&](std::string field, std::string msg, std::string actual = {}) {
    diags.push_back({Severity::Warning, std::move(field), std::move(msg), std::move(actual)});
  };

  const auto& in = config.instance;
  if (in.n_arms < 2) error("instance.n_arms", "must be at least 2", std::to_string(in.n_arms));
  if (in.dim < 1 || in.dim > kMaxDim) {
    error("instance.dim", "must lie in [1, 64]", std::to_string(in.dim));
  }
  if (in.horizon < 1) error("instance.horizon", "must be at least 1", std::to_string(in.horizon));
  if (!(in.noise_std >= 0.0) || !std::isfinite(in.noise_std)) {
    error("instance.noise_std", "must be finite and >= 0", fmt_num(in.noise_std));
  }
  if (in.init_explore_m > in.horizon) {
    error("instance.init_explore_m", "m must not exceed horizon T",
          std::to_string(in.init_explore_m) + " > " + std::to_string(in.horizon));
  } else if (in.init_explore_m < in.n_arms * in.dim) {
    warn("instance.init_explore_m", "warm start shorter than N*d rounds",
         std::to_string(in.init_explore_m));
  }
  if (!in.warmup_responses.empty() && in.warmup_responses.size() != in.init_explore_m) {
    error("instance.warmup_responses", "length must equal init_explore_m",
          std::to_string(in.warmup_responses.size()));
  }

  if (in.is_dataset()) {
    const auto& replay = std::get<DatasetReplay>(in.context_source);
    if (!in.true_attrs.empty()) {
      error("instance.true_attrs", "not used with DatasetReplay; rewards come from labels");
    }
    if (replay.dataset) {
      if (replay.dataset->n_classes != in.n_arms) {
        error("instance.n_arms", "must equal the dataset's class count",
              std::to_string(in.n_arms));
      }
      if (replay.dataset->dim() != in.dim) {
        error("instance.dim", "must equal the dataset's feature count", std::to_string(in.dim));
      }
      if (!replay.with_replacement && in.horizon > replay.dataset->rows.size()) {
        error("instance.horizon", "exceeds dataset rows; set with_replacement",
              std::to_string(in.horizon) + " > " + std::to_string(replay.dataset->rows.size()));
      }
    }
  } else {
    if (in.true_attrs.size() != in.n_arms) {
      error("instance.true_attrs", "need one attribute vector per arm",
            std::to_string(in.true_attrs.size()));
    }
    for (std::size_t i = 0; i < in.true_attrs.size(); ++i) {
      const auto field = "instance.true_attrs[" + std::to_string(i) + "]";
      const auto& mu = in.true_attrs[i];
      if (mu.size() != in.dim) {
        error(field, "dimension must equal instance.dim", std::to_string(mu.size()));
        continue;
      }
      if (!all_finite(mu)) {
        error(field, "entries must be finite");
        continue;
      }
      if (norm2(mu) > 1.0 + 1e-12) {
        error(field, "true_attrs[" + std::to_string(i) + "] norm exceeds 1", fmt_num(norm2(mu)));
      }
    }
    if (const auto* fs = std::get_if<FixedSequence>(&in.context_source)) {
      if (fs->contexts.empty()) error("instance.context_source.contexts", "must not be empty");
      if (!fs->cycle && fs->contexts.size() < in.horizon) {
        error("instance.context_source.contexts", "shorter than the horizon and cycle is false",
              std::to_string(fs->contexts.size()));
      }
      for (std::size_t i = 0; i < fs->contexts.size(); ++i) {
        if (fs->contexts[i].size() != in.dim || !all_finite(fs->contexts[i])) {
          error("instance.context_source.contexts[" + std::to_string(i) + "]",
                "must have dim finite entries");
        }
      }
    } else if (const auto* g = std::get_if<GaussianIID>(&in.context_source)) {
      if (g->mean.size() != in.dim || !all_finite(g->mean)) {
        error("instance.context_source.mean", "must have dim finite entries",
              std::to_string(g->mean.size()));
      }
      if (!(g->std >= 0.0) || !std::isfinite(g->std)) {
        error("instance.context_source.std", "must be finite and >= 0", fmt_num(g->std));
      }
    }
  }

  if (config.n_runs < 1) error("n_runs", "must be at least 1", std::to_string(config.n_runs));
  if (config.policies.empty()) error("policies", "at least one policy is required");

  std::set<std::string> labels;
  for (std::size_t i = 0; i < config.policies.size(); ++i) {
    const auto& p = config.policies[i];
    const std::string base = "policies[" + std::to_string(i) + "]";
    if (!labels.insert(p.label()).second) {
      error(base + ".name", "duplicate policy label; set distinct names", p.label());
    }
    const bool restricted = p.kind == PolicyKind::CBChainedRestricted;
    if (restricted && !p.budget) {
      error(base + ".budget", "CBChainedRestricted requires a budget");
    }
    if (!restricted && p.budget) {
      error(base + ".budget", "budget is only valid for CBChainedRestricted", fmt_num(*p.budget));
    }
    if (p.budget && (!(*p.budget >= 0.0) || !std::isfinite(*p.budget))) {
      error(base + ".budget", "must be finite and >= 0", fmt_num(*p.budget));
    }
    if (!(p.sigma_pay >= 0.0) || !std::isfinite(p.sigma_pay)) {
      error(base + ".sigma_pay", "must be finite and >= 0", fmt_num(p.sigma_pay));
    }
    if (!(p.linucb_alpha >= 0.0) || !std::isfinite(p.linucb_alpha)) {
      error(base + ".linucb_alpha", "must be finite and >= 0", fmt_num(p.linucb_alpha));
    }
    if (estimator_mode_for(p) == EstimatorMode::Ridge &&
        (!(p.ridge_lambda > 0.0) || !std::isfinite(p.ridge_lambda))) {
      error(base + ".ridge_lambda", "must be finite and > 0 for ridge estimators",
            fmt_num(p.ridge_lambda));
    }
    if (!(p.delta > 0.0 && p.delta < 1.0)) {
      error(base + ".delta", "must lie in (0, 1)", fmt_num(p.delta));
    }
    if (p.estimator && p.kind != PolicyKind::NoPayments) {
      error(base + ".estimator", "estimator choice is only configurable for NoPayments");
    }
    if (p.init_explore_m && *p.init_explore_m > in.horizon) {
      error(base + ".init_explore_m", "m must not exceed horizon T",
            std::to_string(*p.init_explore_m));
    }
    if (p.init_explore_m && !in.warmup_responses.empty() &&
        *p.init_explore_m != in.init_explore_m) {
      error(base + ".init_explore_m", "cannot differ from the instance when warmup_responses is set");
    }
  }
  return diags;
}

void override_dataset(ExperimentConfig& config, const std::filesystem::path& path) {
  auto& in = config.instance;
  auto* replay = std::get_if<DatasetReplay>(&in.context_source);
  if (!replay || !in.dataset_source) {
    throw std::invalid_argument("--dataset applies only to DatasetReplay instances");
  }
  auto info = *in.dataset_source;
  info.path = path;
  replay->dataset = std::make_shared<const BanditDataset>(
      load_dataset_csv(info.path, info.n_classes, info.standardize, info.header));
  in.dataset_source = info;
  in.dim = replay->dataset->dim();
  in.n_arms = replay->dataset->n_classes;
}

bool apply_env_overrides(ExperimentConfig& config) {
  const char* seed = std::getenv("PAYBAND_SEED");
  if (!seed || !*seed) return true;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(seed, &end, 10);
  if (errno != 0 || *end != '\0' || seed[0] == '-') return false;
  config.instance.master_seed = v;
  return true;
}

json to_json(const PolicyConfig& policy) {
  json j{{"kind", std::string(to_string(policy.kind))},
         {"name", policy.label()},
         {"sigma_pay", policy.sigma_pay},
         {"ridge_lambda", policy.ridge_lambda},
         {"delta", policy.delta},
         {"linucb_alpha", policy.linucb_alpha}};
  if (policy.budget) j["budget"] = *policy.budget;
  if (policy.init_explore_m) j["init_explore_m"] = *policy.init_explore_m;
  if (policy.estimator) j["estimator"] = *policy.estimator == EstimatorMode::OLS ? "ols" : "ridge";
  return j;
}

}  // namespace payband
