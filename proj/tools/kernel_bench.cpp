// Compares the serial reference kernels against the OpenMP versions and
// checks that both produce identical output.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "tss/kernels.hpp"
#include "tss/synthbench.hpp"

#ifdef TSS_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int n_series = argc > 1 ? std::atoi(argv[1]) : 400;

  tss::GeneratorConfig gcfg;
  gcfg.n_series = n_series;
  auto data = tss::generate_synthetic(gcfg);
  tss::WindowSpec w{5, 10};
  auto anchors = tss::enumerate_windows(data.dataset, w);

#ifdef TSS_HAVE_OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not available, parallel kernels run serially\n");
#endif
  std::printf("anchors: %zu\n\n", anchors.size());
  std::printf("%-24s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");

  std::vector<double> serial(anchors.size()), parallel(anchors.size());
  for (auto kind : {tss::UtilityKind::Trend, tss::UtilityKind::Range,
                    tss::UtilityKind::TrendDeviation}) {
    tss::UtilityConfig cfg;
    cfg.kind = kind;
    if (kind == tss::UtilityKind::Range) {
      cfg.tau_high = gcfg.tau_high();
      cfg.tau_low = gcfg.tau_low();
      cfg.k_high = cfg.k_low = 2.0;
    }
    double ts = time_ms(
        [&] { tss::compute_scores_serial(data.dataset, anchors, w, cfg, serial); }, 3);
    double tp =
        time_ms([&] { tss::compute_scores(data.dataset, anchors, w, cfg, parallel); }, 3);
    for (std::size_t i = 0; i < serial.size(); ++i)
      if (serial[i] != parallel[i]) {
        std::fprintf(stderr, "MISMATCH in %s at anchor %zu\n",
                     tss::to_string(kind).c_str(), i);
        return 1;
      }
    std::printf("%-24s %12.2f %12.2f %7.2fx\n", tss::to_string(kind).c_str(), ts, tp,
                ts / tp);
  }

  // dtw batch: many candidate windows against one target
  std::vector<std::vector<double>> queries;
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, anchors.size() - 1);
  for (int i = 0; i < 20000; ++i)
    queries.push_back(tss::make_window(data.dataset, anchors[pick(rng)], w).values);
  auto target = tss::make_window(data.dataset, anchors[pick(rng)], w).values;
  std::vector<double> ds(queries.size()), dp(queries.size());
  double ts = time_ms([&] { tss::dtw_batch_serial(queries, target, ds); }, 3);
  double tp = time_ms([&] { tss::dtw_batch(queries, target, dp); }, 3);
  if (ds != dp) {
    std::fprintf(stderr, "MISMATCH in dtw_batch\n");
    return 1;
  }
  std::printf("%-24s %12.2f %12.2f %7.2fx\n", "dtw_batch", ts, tp, ts / tp);
  std::printf("\nall kernels bit-identical across serial/parallel\n");
  return 0;
}
