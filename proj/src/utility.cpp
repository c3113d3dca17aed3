#include "tss/utility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tss/kernels.hpp"

namespace tss {

std::string to_string(UtilityKind k) {
  switch (k) {
    case UtilityKind::Trend: return "trend";
    case UtilityKind::Range: return "range";
    case UtilityKind::TrendDeviation: return "trend_deviation";
  }
  return "?";
}

UtilityKind utility_kind_from_string(const std::string& s) {
  if (s == "trend") return UtilityKind::Trend;
  if (s == "range") return UtilityKind::Range;
  if (s == "trend_deviation") return UtilityKind::TrendDeviation;
  throw ValidationError("unknown utility kind: " + s);
}

void UtilityConfig::validate() const {
  if (kind == UtilityKind::Range) {
    if (!(tau_low < tau_high)) throw ValidationError("range utility: tau_low must be < tau_high");
    if (k_high <= 0 || k_low <= 0) throw ValidationError("range utility: k must be positive");
    if (range_w_high < 0 || range_w_low < 0)
      throw ValidationError("range utility: term weights must be non-negative");
  }
  if (kind == UtilityKind::Trend && (w_rise < 0 || w_fall < 0))
    throw ValidationError("trend utility: W_h and W_l must be non-negative");
  apply_feature_map(feature_map, {});  // rejects unknown names
}

std::vector<double> apply_feature_map(const std::string& name,
                                      std::span<const double> values) {
  if (name == "identity" || name.empty())
    return std::vector<double>(values.begin(), values.end());
  throw ValidationError("unknown feature map: " + name);
}

double slope(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw ValidationError("slope requires at least 2 points");
  // closed-form least squares against x = 0..n-1
  const double xbar = (n - 1) / 2.0;
  double ybar = 0.0;
  for (double v : values) ybar += v;
  ybar /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = static_cast<double>(i) - xbar;
    num += dx * (values[i] - ybar);
    den += dx * dx;
  }
  return num / den;
}

double naive_slope(const Series& s, int t, int b) {
  if (b < 1) throw ValidationError("naive_slope requires b >= 1");
  if (t - b < 0 || t >= s.length())
    throw ValidationError("naive_slope: t out of range for series " + s.id);
  return (s.values[t] - s.values[t - b]) / static_cast<double>(b);
}

double trend_utility(const Window& w, const UtilityConfig& cfg) {
  auto mapped = apply_feature_map(cfg.feature_map, w.values);
  double y = slope(mapped);
  double up = std::max(y, 0.0);
  double down = std::max(-y, 0.0);
  return cfg.w_rise * up * up + cfg.w_fall * down * down;
}

namespace {
double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
}  // namespace

double range_utility(double y_t, const UtilityConfig& cfg) {
  // sigmoids centered at the thresholds, shifted so in-range values clip to 0
  // and extreme values saturate at 1
  double sh = 2.0 * (logistic(cfg.k_high * (y_t - cfg.tau_high)) - 0.5);
  double sl = 2.0 * (logistic(cfg.k_low * (cfg.tau_low - y_t)) - 0.5);
  return cfg.range_w_high * std::max(sh, 0.0) + cfg.range_w_low * std::max(sl, 0.0);
}

double trend_deviation_utility(const Window& w, const Series& s, const UtilityConfig& cfg) {
  int b = w.anchor - w.start;
  if (b < 1)
    throw ValidationError("trend_deviation requires b >= 1 history points");
  auto mapped = apply_feature_map(cfg.feature_map, w.values);
  double expected = naive_slope(s, w.anchor, b);
  double actual = slope(mapped);
  double d = expected - actual;
  return d * d;
}

double evaluate_utility(const Dataset& d, const Anchor& a, const WindowSpec& w,
                        const UtilityConfig& cfg) {
  const Series& s = d.series.at(a.series);
  switch (cfg.kind) {
    case UtilityKind::Range:
      return range_utility(s.values[a.t], cfg);
    case UtilityKind::Trend:
      return trend_utility(make_window(d, a, w), cfg);
    case UtilityKind::TrendDeviation:
      return trend_deviation_utility(make_window(d, a, w), s, cfg);
  }
  throw Error("unreachable utility kind");
}

namespace {

std::vector<int> sorted_queue(const std::vector<double>& scores) {
  std::vector<int> q(scores.size());
  std::iota(q.begin(), q.end(), 0);
  std::sort(q.begin(), q.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;  // anchors are listed in (series, t) order
  });
  return q;
}

double rl_score(const std::vector<double>& scores) {
  if (scores.empty()) return 0.0;
  double mean = std::accumulate(scores.begin(), scores.end(), 0.0) /
                static_cast<double>(scores.size());
  double var = 0.0;
  for (double s : scores) var += (s - mean) * (s - mean);
  var /= static_cast<double>(scores.size());  // population variance
  double sd = std::sqrt(var);
  if (sd == 0.0) return 0.0;
  return *std::max_element(scores.begin(), scores.end()) / sd;
}

}  // namespace

std::vector<UtilityBucket> build_buckets(const Dataset& d, const WindowSpec& w,
                                         std::span<const UtilityConfig> fns,
                                         std::span<const Anchor> anchors) {
  if (fns.empty()) throw ValidationError("build_buckets: no utility functions configured");
  std::vector<UtilityBucket> buckets;
  buckets.reserve(fns.size());
  for (const auto& cfg : fns) {
    cfg.validate();
    if (cfg.kind == UtilityKind::TrendDeviation && w.before < 1)
      throw ValidationError("trend_deviation requires window b >= 1");
    UtilityBucket b;
    b.function_id = cfg.effective_id();
    b.scores.resize(anchors.size());
    compute_scores(d, anchors, w, cfg, b.scores);
    b.queue = sorted_queue(b.scores);
    b.rl = rl_score(b.scores);
    buckets.push_back(std::move(b));
  }
  return buckets;
}

std::vector<int> bucket_order(std::span<const UtilityBucket> buckets) {
  if (buckets.empty()) throw ValidationError("bucket_order: no buckets");
  std::vector<int> order(buckets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return buckets[a].rl > buckets[b].rl; });
  return order;
}

}  // namespace tss
