#pragma once

#include <span>
#include <string>
#include <vector>

#include "tss/core.hpp"

namespace tss {

enum class UtilityKind { Trend, Range, TrendDeviation };

std::string to_string(UtilityKind k);
UtilityKind utility_kind_from_string(const std::string& s);

struct UtilityConfig {
  UtilityKind kind = UtilityKind::Trend;
  std::string id;  // function id used in summaries; defaults to the kind name

  // trend
  double w_rise = 1.0;  // W_h
  double w_fall = 1.0;  // W_l

  // range
  double tau_high = 0.0;
  double tau_low = 0.0;
  double k_high = 1.0;
  double k_low = 1.0;
  double range_w_high = 1.0;  // optional per-term weights, default 1
  double range_w_low = 1.0;

  std::string feature_map = "identity";

  void validate() const;
  std::string effective_id() const { return id.empty() ? to_string(kind) : id; }
};

/// Registry of named window transforms. Ships with identity only; unknown
/// names are errors.
std::vector<double> apply_feature_map(const std::string& name,
                                      std::span<const double> values);

/// Least-squares slope of values against indices 0..len-1. Requires len >= 2.
double slope(std::span<const double> values);

/// (y_t - y_{t-b}) / b. Requires b >= 1 and t-b >= 0.
double naive_slope(const Series& s, int t, int b);

double trend_utility(const Window& w, const UtilityConfig& cfg);
double range_utility(double y_t, const UtilityConfig& cfg);
double trend_deviation_utility(const Window& w, const Series& s, const UtilityConfig& cfg);

/// Evaluates one utility at one anchor.
double evaluate_utility(const Dataset& d, const Anchor& a, const WindowSpec& w,
                        const UtilityConfig& cfg);

struct UtilityBucket {
  std::string function_id;
  std::vector<double> scores;  // one per anchor, indexed like the anchor list
  std::vector<int> queue;      // anchor indices, descending score, ties by anchor
  double rl = 0.0;             // max score / population std, 0 when std is 0
};

/// One bucket per configured function. Scores are computed in parallel over
/// anchors when OpenMP is available; output is deterministic either way.
std::vector<UtilityBucket> build_buckets(const Dataset& d, const WindowSpec& w,
                                         std::span<const UtilityConfig> fns,
                                         std::span<const Anchor> anchors);

/// Bucket indices sorted by descending rl; ties keep configuration order.
std::vector<int> bucket_order(std::span<const UtilityBucket> buckets);

}  // namespace tss
