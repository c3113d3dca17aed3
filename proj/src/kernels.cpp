#include "tss/kernels.hpp"

#include "tss/diversity.hpp"

#ifdef TSS_HAVE_OPENMP
#include <omp.h>
#endif

namespace tss {

void compute_scores_serial(const Dataset& d, std::span<const Anchor> anchors,
                           const WindowSpec& w, const UtilityConfig& cfg,
                           std::span<double> out) {
  for (std::size_t i = 0; i < anchors.size(); ++i)
    out[i] = evaluate_utility(d, anchors[i], w, cfg);
}

void compute_scores(const Dataset& d, std::span<const Anchor> anchors,
                    const WindowSpec& w, const UtilityConfig& cfg,
                    std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(anchors.size());
#ifdef TSS_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = evaluate_utility(d, anchors[i], w, cfg);
}

void dtw_batch_serial(std::span<const std::vector<double>> queries,
                      std::span<const double> target, std::span<double> out) {
  for (std::size_t i = 0; i < queries.size(); ++i)
    out[i] = dtw_distance(queries[i], target);
}

void dtw_batch(std::span<const std::vector<double>> queries,
               std::span<const double> target, std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(queries.size());
#ifdef TSS_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = dtw_distance(queries[i], target);
}

}  // namespace tss
