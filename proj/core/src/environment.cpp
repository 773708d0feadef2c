#include "payband/environment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace payband {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string_view rest(line);
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::optional<double> parse_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> parse_int(const std::string& s) {
  long long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

[[noreturn]] void fail_at(std::size_t row, std::size_t col, const std::string& msg) {
  throw DatasetError("row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + msg);
}

}  // namespace

std::vector<std::size_t> BanditDataset::class_histogram() const {
  std::vector<std::size_t> hist(n_classes, 0);
  for (const auto& r : rows) {
    if (r.label < n_classes) ++hist[r.label];
  }
  return hist;
}

void standardize(BanditDataset& dataset) {
  const std::size_t d = dataset.dim();
  const double n = static_cast<double>(dataset.rows.size());
  if (n == 0) return;
  for (std::size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (const auto& r : dataset.rows) mean += r.features[c];
    mean /= n;
    double var = 0.0;
    for (const auto& r : dataset.rows) var += (r.features[c] - mean) * (r.features[c] - mean);
    const double sd = std::sqrt(var / n);
    for (auto& r : dataset.rows) {
      r.features[c] = sd > 0.0 ? (r.features[c] - mean) / sd : 0.0;
    }
  }
  dataset.standardized = true;
}

BanditDataset read_dataset_csv(std::istream& in, std::size_t n_classes, bool standardize_features,
                               std::optional<bool> has_header) {
  if (n_classes < 2) throw DatasetError("n_classes must be at least 2");
  BanditDataset ds;
  ds.n_classes = n_classes;
  std::string line;
  std::size_t row_no = 0;
  std::size_t expected_fields = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++row_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (first) {
      first = false;
      bool header = false;
      if (has_header.has_value()) {
        header = *has_header;
      } else {
        header = std::any_of(fields.begin(), fields.end(),
                             [](const std::string& f) { return !parse_double(f).has_value(); });
      }
      if (header) {
        expected_fields = fields.size();
        continue;
      }
    }
    if (fields.size() < 2) fail_at(row_no, fields.size(), "expected at least one feature and a label");
    if (expected_fields == 0) expected_fields = fields.size();
    if (fields.size() != expected_fields) {
      throw DimensionMismatch("row " + std::to_string(row_no) + ": " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(expected_fields));
    }
    LabeledRow r;
    r.features = Vector(fields.size() - 1);
    for (std::size_t c = 0; c + 1 < fields.size(); ++c) {
      const auto v = parse_double(fields[c]);
      if (!v) fail_at(row_no, c + 1, "not a finite number: '" + fields[c] + "'");
      r.features[c] = *v;
    }
    const auto label = parse_int(fields.back());
    if (!label) fail_at(row_no, fields.size(), "label is not an integer: '" + fields.back() + "'");
    if (*label < 0 || static_cast<std::size_t>(*label) >= n_classes) {
      fail_at(row_no, fields.size(),
              "label " + std::to_string(*label) + " outside [0, " + std::to_string(n_classes) + ")");
    }
    r.label = static_cast<ArmIndex>(*label);
    ds.rows.push_back(std::move(r));
  }
  if (ds.rows.empty()) throw DatasetError("dataset has no rows");
  if (ds.dim() > kMaxDim) throw DatasetError("dataset has more than 64 features");
  if (standardize_features) standardize(ds);
  return ds;
}

BanditDataset load_dataset_csv(const std::filesystem::path& path, std::size_t n_classes,
                               bool standardize_features, std::optional<bool> has_header) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset file " + path.string());
  return read_dataset_csv(in, n_classes, standardize_features, has_header);
}

ContextSource::ContextSource(ContextSourceSpec spec, std::uint64_t seed)
    : spec_(std::move(spec)), seed_(seed) {
  if (const auto* replay = std::get_if<DatasetReplay>(&spec_)) {
    if (!replay->dataset || replay->dataset->rows.empty()) {
      throw DatasetError("DatasetReplay needs a nonempty dataset");
    }
    if (!replay->with_replacement) {
      order_.resize(replay->dataset->rows.size());
      std::iota(order_.begin(), order_.end(), std::size_t{0});
      Rng rng(derive_seed(seed_, kShuffleStream, 0));
      std::shuffle(order_.begin(), order_.end(), rng);
    }
  }
}

ContextDraw ContextSource::draw(std::size_t t) const {
  ContextDraw out;
  if (const auto* fixed = std::get_if<FixedSequence>(&spec_)) {
    if (fixed->contexts.empty()) throw ExhaustedSequence("FixedSequence is empty");
    if (t >= fixed->contexts.size() && !fixed->cycle) {
      throw ExhaustedSequence("FixedSequence exhausted at round " + std::to_string(t));
    }
    out.raw = fixed->contexts[t % fixed->contexts.size()];
  } else if (const auto* gauss = std::get_if<GaussianIID>(&spec_)) {
    Rng rng(derive_seed(seed_, kContextStream, t));
    std::normal_distribution<double> normal(0.0, 1.0);
    out.raw = gauss->mean;
    for (double& x : out.raw) x += gauss->std * normal(rng);
  } else {
    const auto& replay = std::get<DatasetReplay>(spec_);
    const auto& rows = replay.dataset->rows;
    std::size_t index = 0;
    if (replay.with_replacement) {
      Rng rng(derive_seed(seed_, kShuffleStream, t + 1));
      index = std::uniform_int_distribution<std::size_t>(0, rows.size() - 1)(rng);
    } else {
      if (t >= order_.size()) {
        throw ExhaustedSequence("dataset has only " + std::to_string(order_.size()) +
                                " rows; enable with_replacement for longer horizons");
      }
      index = order_[t];
    }
    out.raw = rows[index].features;
    out.label = rows[index].label;
  }
  out.context = project_unit_ball(out.raw);
  return out;
}

RewardDraw realize_reward(const std::vector<Vector>& true_attrs, const Vector& context,
                          ArmIndex chosen, double noise_std, Rng& rng) {
  RewardDraw r;
  r.true_mean = dot(context, true_attrs.at(chosen));
  r.observed = r.true_mean;
  if (noise_std > 0.0) r.observed += std::normal_distribution<double>(0.0, noise_std)(rng);
  return r;
}

LinearEnvironment::LinearEnvironment(std::vector<Vector> true_attrs, double noise_std,
                                     ContextSource source)
    : true_attrs_(std::move(true_attrs)), noise_std_(noise_std), source_(std::move(source)) {
  if (true_attrs_.empty()) throw std::invalid_argument("LinearEnvironment: no arms");
}

RewardDraw LinearEnvironment::reward(const ContextDraw& draw, ArmIndex chosen, Rng& rng) const {
  return realize_reward(true_attrs_, draw.context, chosen, noise_std_, rng);
}

double LinearEnvironment::regret(const ContextDraw& draw, ArmIndex chosen) const {
  return inst_regret(true_attrs_, draw.context, chosen);
}

DatasetEnvironment::DatasetEnvironment(std::shared_ptr<const BanditDataset> dataset,
                                       std::uint64_t shuffle_seed, double noise_std,
                                       bool with_replacement)
    : dataset_(dataset),
      noise_std_(noise_std),
      source_(DatasetReplay{std::move(dataset), with_replacement}, shuffle_seed) {}

RewardDraw DatasetEnvironment::reward(const ContextDraw& draw, ArmIndex chosen, Rng& rng) const {
  RewardDraw r;
  r.true_mean = draw.label == chosen ? 1.0 : 0.0;
  r.observed = r.true_mean;
  if (noise_std_ > 0.0) r.observed += std::normal_distribution<double>(0.0, noise_std_)(rng);
  return r;
}

double DatasetEnvironment::regret(const ContextDraw& draw, ArmIndex chosen) const {
  return draw.label == chosen ? 0.0 : 1.0;
}

std::unique_ptr<DatasetEnvironment> dataset_to_instance(std::shared_ptr<const BanditDataset> dataset,
                                                        std::size_t horizon,
                                                        std::uint64_t shuffle_seed,
                                                        double noise_std, bool with_replacement) {
  if (!dataset || dataset->rows.empty()) throw DatasetError("dataset is empty");
  for (std::size_t i = 0; i < dataset->rows.size(); ++i) {
    if (dataset->rows[i].features.size() != dataset->dim()) {
      throw DimensionMismatch("dataset row " + std::to_string(i) + " has " +
                              std::to_string(dataset->rows[i].features.size()) +
                              " features, expected " + std::to_string(dataset->dim()));
    }
    if (dataset->rows[i].label >= dataset->n_classes) {
      throw DatasetError("dataset row " + std::to_string(i) + " has an out-of-range label");
    }
  }
  if (!with_replacement && horizon > dataset->rows.size()) {
    throw DatasetError("horizon " + std::to_string(horizon) + " exceeds " +
                       std::to_string(dataset->rows.size()) +
                       " rows; enable with_replacement");
  }
  return std::make_unique<DatasetEnvironment>(std::move(dataset), shuffle_seed, noise_std,
                                              with_replacement);
}

double covariate_diversity_report(const std::vector<Vector>& contexts) {
  if (contexts.empty()) throw std::invalid_argument("covariate_diversity_report: no contexts");
  Matrix avg(contexts.front().size());
  for (const auto& x : contexts) avg.add_outer(x);
  const double scale = 1.0 / static_cast<double>(contexts.size());
  for (std::size_t r = 0; r < avg.dim(); ++r) {
    for (std::size_t c = 0; c < avg.dim(); ++c) avg(r, c) *= scale;
  }
  return min_eig_sym(avg);
}

}  // namespace payband
