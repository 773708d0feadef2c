#include "payband/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>

#include "payband/simulation.hpp"

namespace payband {

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t jobs) {
  const std::size_t n_policies = config.policies.size();
  const std::size_t n_runs = config.n_runs;
  const std::size_t total = n_policies * n_runs;

  std::vector<RunTrace> slots(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t p = k / n_runs;
      const std::size_t r = k % n_runs;
      try {
        slots[k] = run_single(config.instance, config.policies[p],
                              seeds_for(config.instance.master_seed, p, r));
        slots[k].run_index = r;
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };

  const std::size_t n_threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(total, 1));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult result;
  result.policies.reserve(n_policies);
  for (std::size_t p = 0; p < n_policies; ++p) {
    PolicyResult pr;
    pr.policy = config.policies[p];
    pr.traces.assign(std::make_move_iterator(slots.begin() + p * n_runs),
                     std::make_move_iterator(slots.begin() + (p + 1) * n_runs));
    pr.curves = aggregate(pr.traces);
    result.policies.push_back(std::move(pr));
  }
  return result;
}

std::string output_stem(const PolicyConfig& policy) {
  std::string stem = policy.label();
  for (char& c : stem) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return stem;
}

void write_aggregate_csv(std::ostream& out, const AggregateCurves& c) {
  out << "t,n_runs,mean_cum_regret,stderr_cum_regret,mean_cum_payment_disbursed,"
         "stderr_cum_payment_disbursed,mean_cum_payment_abs,stderr_cum_payment_abs,"
         "mean_cum_payment_vector,stderr_cum_payment_vector";
  for (std::size_t i = 0; i < c.per_arm_payment.size(); ++i) out << ",mean_cum_payment_arm" << i;
  out << '\n';
  for (std::size_t k = 0; k < c.horizon; ++k) {
    out << (k + 1) << ',' << c.n_runs << ',' << format_double(c.mean_cum_regret[k]) << ','
        << format_double(c.stderr_cum_regret[k]) << ',' << format_double(c.mean_cum_payment[k])
        << ',' << format_double(c.stderr_cum_payment[k]) << ','
        << format_double(c.mean_cum_payment_abs[k]) << ','
        << format_double(c.stderr_cum_payment_abs[k]) << ','
        << format_double(c.mean_cum_payment_vector[k]) << ','
        << format_double(c.stderr_cum_payment_vector[k]);
    for (const auto& arm : c.per_arm_payment) out << ',' << format_double(arm[k]);
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const std::vector<RunTrace>& traces) {
  out << "t,run,arm,inst_regret,cum_regret,inst_payment_disbursed,cum_payment_disbursed,"
         "cum_payment_abs,budget_remaining\n";
  for (const auto& tr : traces) {
    const auto cum = accumulate(tr);
    for (std::size_t k = 0; k < tr.records.size(); ++k) {
      const auto& r = tr.records[k];
      out << r.t << ',' << tr.run_index << ',' << r.chosen_arm << ','
          << format_double(r.inst_regret) << ',' << format_double(cum.cum_regret[k]) << ','
          << format_double(r.payment_paid) << ',' << format_double(cum.cum_payment[k]) << ','
          << format_double(cum.cum_payment_abs[k]) << ',';
      if (r.budget_remaining) out << format_double(*r.budget_remaining);
      out << '\n';
    }
  }
}

std::vector<std::filesystem::path> write_results(const ExperimentResult& result,
                                                 const std::filesystem::path& dir,
                                                 bool emit_full_trace) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  auto open = [&](const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
  };
  for (const auto& pr : result.policies) {
    const auto stem = output_stem(pr.policy);
    const auto agg_path = dir / (stem + "_aggregate.csv");
    {
      auto out = open(agg_path);
      write_aggregate_csv(out, pr.curves);
    }
    written.push_back(agg_path);
    if (emit_full_trace) {
      const auto trace_path = dir / (stem + "_trace.csv");
      auto out = open(trace_path);
      write_trace_csv(out, pr.traces);
      written.push_back(trace_path);
    }
  }
  return written;
}

BanditDataset import_dataset(const std::filesystem::path& path, bool standardize_features,
                             std::size_t n_classes, std::ostream* summary) {
  BanditDataset ds = load_dataset_csv(path, n_classes, standardize_features);
  if (summary) {
    *summary << "rows: " << ds.rows.size() << "\n"
             << "features: " << ds.dim() << "\n"
             << "standardized: " << (ds.standardized ? "yes" : "no") << "\n"
             << "class histogram:";
    const auto hist = ds.class_histogram();
    for (std::size_t c = 0; c < hist.size(); ++c) *summary << ' ' << c << '=' << hist[c];
    *summary << '\n';
  }
  return ds;
}

}  // namespace payband
