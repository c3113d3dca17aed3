#include <doctest.h>

#include <random>

#include "tss/kernels.hpp"
#include "tss/synthbench.hpp"

using namespace tss;

TEST_CASE("parallel score kernel matches the serial reference bit-for-bit") {
  GeneratorConfig gcfg;
  gcfg.n_series = 20;
  gcfg.length = 120;
  gcfg.seed = 3;
  auto data = generate_synthetic(gcfg);
  WindowSpec w{5, 10};
  auto anchors = enumerate_windows(data.dataset, w);
  REQUIRE(!anchors.empty());

  for (auto kind : {UtilityKind::Trend, UtilityKind::Range, UtilityKind::TrendDeviation}) {
    UtilityConfig cfg;
    cfg.kind = kind;
    if (kind == UtilityKind::Range) {
      cfg.tau_high = gcfg.tau_high();
      cfg.tau_low = gcfg.tau_low();
      cfg.k_high = cfg.k_low = 2.0;
    }
    std::vector<double> serial(anchors.size()), parallel(anchors.size());
    compute_scores_serial(data.dataset, anchors, w, cfg, serial);
    compute_scores(data.dataset, anchors, w, cfg, parallel);
    CHECK(serial == parallel);
  }
}

TEST_CASE("parallel dtw batch matches the serial reference bit-for-bit") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<std::vector<double>> queries(200);
  for (auto& q : queries) {
    q.resize(11);
    for (auto& v : q) v = dist(rng);
  }
  std::vector<double> target(11);
  for (auto& v : target) v = dist(rng);

  std::vector<double> serial(queries.size()), parallel(queries.size());
  dtw_batch_serial(queries, target, serial);
  dtw_batch(queries, target, parallel);
  CHECK(serial == parallel);
}
