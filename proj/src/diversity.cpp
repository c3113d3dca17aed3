#include "tss/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tss {

double dtw_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ValidationError("dtw_distance: empty input");
  const std::size_t n = a.size(), m = b.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  // two-row DP; windows are short so no band constraint
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = inf;
    for (std::size_t j = 1; j <= m; ++j) {
      double d = a[i - 1] - b[j - 1];
      cur[j] = d * d + std::min({prev[j], cur[j - 1], prev[j - 1]});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

void znormalize(std::vector<double>& v) {
  if (v.empty()) return;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  double sd = std::sqrt(var);
  for (double& x : v) x = sd == 0.0 ? 0.0 : (x - mean) / sd;
}

namespace {

// earlier (series_id, anchor) wins ties
bool window_before(const Window& a, const Window& b) {
  if (a.series_id != b.series_id) return a.series_id < b.series_id;
  return a.anchor < b.anchor;
}

std::size_t argmax_with_ties(std::span<const Window> candidates,
                             std::span<const double> objective) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    if (objective[c] > objective[best] ||
        (objective[c] == objective[best] && window_before(candidates[c], candidates[best])))
      best = c;
  }
  return best;
}

}  // namespace

std::size_t tw_diversity_pick(std::span<const Window> candidates,
                              std::span<const std::vector<double>> dist,
                              double* out_score) {
  if (candidates.empty()) throw ValidationError("tw_diversity_pick: no candidates");
  std::vector<double> row_min(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (dist[c].empty()) throw ValidationError("tw_diversity_pick: empty selected set");
    row_min[c] = *std::min_element(dist[c].begin(), dist[c].end());
  }
  std::size_t best = argmax_with_ties(candidates, row_min);
  if (out_score) *out_score = row_min[best];
  return best;
}

std::size_t tw_diversity_pick(std::span<const Window> selected,
                              std::span<const Window> candidates,
                              double* out_score, bool znorm) {
  if (selected.empty()) throw ValidationError("tw_diversity_pick: empty selected set");
  auto prep = [&](const Window& w) {
    std::vector<double> v = w.values;
    if (znorm) znormalize(v);
    return v;
  };
  std::vector<std::vector<double>> sel;
  sel.reserve(selected.size());
  for (const auto& s : selected) sel.push_back(prep(s));
  std::vector<std::vector<double>> dist(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    auto cv = prep(candidates[c]);
    for (const auto& sv : sel) dist[c].push_back(dtw_distance(cv, sv));
  }
  return tw_diversity_pick(candidates, dist, out_score);
}

std::size_t critic_diversity_pick(std::span<const Window> candidates,
                                  std::span<const double> candidate_scores,
                                  std::span<const double> selected_scores,
                                  double* out_score) {
  if (candidates.empty()) throw ValidationError("critic_diversity_pick: no candidates");
  if (selected_scores.empty()) throw ValidationError("critic_diversity_pick: empty selected set");
  const double k = static_cast<double>(selected_scores.size());
  double mean = 0.0;
  for (double s : selected_scores) mean += s;
  mean /= k;
  std::vector<double> shift(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    double with = (mean * k + candidate_scores[c]) / (k + 1.0);
    shift[c] = std::abs(mean - with);
  }
  std::size_t best = argmax_with_ties(candidates, shift);
  if (out_score) *out_score = shift[best];
  return best;
}

}  // namespace tss
