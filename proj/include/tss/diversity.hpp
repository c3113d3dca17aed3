#pragma once

#include <span>
#include <vector>

#include "tss/core.hpp"

namespace tss {

/// Classic unconstrained DTW with squared-difference local cost and the
/// symmetric match/insert/delete step pattern. Returns the accumulated cost
/// of the best warping path. Throws on empty input.
double dtw_distance(std::span<const double> a, std::span<const double> b);

/// Z-normalizes a vector in place (mean 0, population std 1); constant
/// vectors become all-zero.
void znormalize(std::vector<double>& v);

/// Index into `candidates` of the window with maximal minimum DTW distance to
/// the selected set. `dist` holds precomputed distances, dist[c][v] for
/// candidate c against selected window v. Ties break toward the earlier
/// (series_id, anchor). `out_score` receives the winning max-min distance.
std::size_t tw_diversity_pick(std::span<const Window> candidates,
                              std::span<const std::vector<double>> dist,
                              double* out_score = nullptr);

/// Convenience form computing the distance matrix itself.
std::size_t tw_diversity_pick(std::span<const Window> selected,
                              std::span<const Window> candidates,
                              double* out_score = nullptr, bool znorm = false);

/// Index into `candidates` maximizing |mean(S) - mean(S u {score_c})| where S
/// is the selected set's utility scores in the current bucket. Ties as above.
std::size_t critic_diversity_pick(std::span<const Window> candidates,
                                  std::span<const double> candidate_scores,
                                  std::span<const double> selected_scores,
                                  double* out_score = nullptr);

}  // namespace tss
