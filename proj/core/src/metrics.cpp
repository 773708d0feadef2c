#include "payband/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace payband {

CumulativeCurves accumulate(const RunTrace& trace) {
  const std::size_t horizon = trace.records.size();
  const std::size_t n_arms = horizon ? trace.records.front().payments.size() : 0;
  CumulativeCurves c;
  c.cum_regret.resize(horizon);
  c.cum_payment.resize(horizon);
  c.cum_payment_abs.resize(horizon);
  c.cum_payment_vector.resize(horizon);
  c.per_arm.assign(n_arms, std::vector<double>(horizon, 0.0));

  double regret = 0.0, paid = 0.0, paid_abs = 0.0, vec = 0.0;
  std::vector<double> arm_paid(n_arms, 0.0);
  for (std::size_t k = 0; k < horizon; ++k) {
    const auto& r = trace.records[k];
    regret += r.inst_regret;
    paid += r.payment_paid;
    paid_abs += std::abs(r.payment_paid);
    vec += r.payments.total();
    arm_paid.at(r.chosen_arm) += r.payment_paid;
    c.cum_regret[k] = regret;
    c.cum_payment[k] = paid;
    c.cum_payment_abs[k] = paid_abs;
    c.cum_payment_vector[k] = vec;
    for (std::size_t i = 0; i < n_arms; ++i) c.per_arm[i][k] = arm_paid[i];
  }
  return c;
}

double payment_bound_ratio(double total_payment, std::size_t n_arms, std::size_t horizon) {
  if (horizon < 2) throw std::invalid_argument("payment_bound_ratio: horizon must be >= 2");
  const double n = static_cast<double>(n_arms);
  const double t = static_cast<double>(horizon);
  return std::abs(total_payment) / (n * std::sqrt(2.0 * t * std::log(n * t)));
}

namespace {

void mean_and_stderr(const std::vector<const std::vector<double>*>& curves, std::vector<double>& mean,
                     std::vector<double>& stderr_out) {
  const std::size_t runs = curves.size();
  const std::size_t len = curves.front()->size();
  mean.assign(len, 0.0);
  stderr_out.assign(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    double s = 0.0;
    for (const auto* c : curves) s += (*c)[k];
    const double m = s / static_cast<double>(runs);
    mean[k] = m;
    if (runs > 1) {
      double ss = 0.0;
      for (const auto* c : curves) ss += ((*c)[k] - m) * ((*c)[k] - m);
      stderr_out[k] = std::sqrt(ss / static_cast<double>(runs - 1)) /
                      std::sqrt(static_cast<double>(runs));
    }
  }
}

}  // namespace

AggregateCurves aggregate(const std::vector<RunTrace>& traces) {
  if (traces.empty()) throw MixedConfig("aggregate: no traces");
  const auto& head = traces.front();
  for (const auto& tr : traces) {
    if (tr.horizon() != head.horizon()) throw MixedConfig("aggregate: traces differ in horizon");
    if (tr.policy.kind != head.policy.kind) {
      throw MixedConfig("aggregate: traces differ in policy kind");
    }
  }
  std::vector<CumulativeCurves> acc;
  acc.reserve(traces.size());
  for (const auto& tr : traces) acc.push_back(accumulate(tr));

  AggregateCurves out;
  out.n_runs = traces.size();
  out.horizon = head.horizon();
  auto collect = [&](auto member) {
    std::vector<const std::vector<double>*> v;
    for (const auto& c : acc) v.push_back(&(c.*member));
    return v;
  };
  mean_and_stderr(collect(&CumulativeCurves::cum_regret), out.mean_cum_regret,
                  out.stderr_cum_regret);
  mean_and_stderr(collect(&CumulativeCurves::cum_payment), out.mean_cum_payment,
                  out.stderr_cum_payment);
  mean_and_stderr(collect(&CumulativeCurves::cum_payment_abs), out.mean_cum_payment_abs,
                  out.stderr_cum_payment_abs);
  mean_and_stderr(collect(&CumulativeCurves::cum_payment_vector), out.mean_cum_payment_vector,
                  out.stderr_cum_payment_vector);

  const std::size_t n_arms = acc.front().per_arm.size();
  out.per_arm_payment.resize(n_arms);
  for (std::size_t i = 0; i < n_arms; ++i) {
    std::vector<const std::vector<double>*> v;
    for (const auto& c : acc) v.push_back(&c.per_arm[i]);
    std::vector<double> unused;
    mean_and_stderr(v, out.per_arm_payment[i], unused);
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("loglog_slope: need two or more matched points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace payband
