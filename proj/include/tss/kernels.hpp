#pragma once

#include <span>
#include <vector>

#include "tss/core.hpp"
#include "tss/utility.hpp"

namespace tss {

// Data-parallel scoring kernels. The _serial variants are the reference
// implementations used by the tests and the kernel benchmark; the parallel
// versions must produce bit-identical output for any thread count.

void compute_scores_serial(const Dataset& d, std::span<const Anchor> anchors,
                           const WindowSpec& w, const UtilityConfig& cfg,
                           std::span<double> out);

void compute_scores(const Dataset& d, std::span<const Anchor> anchors,
                    const WindowSpec& w, const UtilityConfig& cfg,
                    std::span<double> out);

/// DTW distance from each of `queries` to `target`, one entry per query.
void dtw_batch_serial(std::span<const std::vector<double>> queries,
                      std::span<const double> target, std::span<double> out);

void dtw_batch(std::span<const std::vector<double>> queries,
               std::span<const double> target, std::span<double> out);

}  // namespace tss
