// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <malloc.h>
#include <new>
#include <random>

#include "oracles.hpp"
#include "tss/diversity.hpp"
#include "tss/json_io.hpp"
#include "tss/mem_tracker.hpp"
#include "tss/synthbench.hpp"

#ifdef TSS_HAVE_OPENMP
#include <omp.h>
#endif

TSS_MEM_TRACKER_DEFINE_GLOBALS

using namespace tss;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

std::vector<UtilityConfig> benchmark_utilities(const GeneratorConfig& g) {
  std::vector<UtilityConfig> fns(3);
  fns[0].kind = UtilityKind::Trend;
  fns[1].kind = UtilityKind::Range;
  fns[1].tau_high = g.tau_high();
  fns[1].tau_low = g.tau_low();
  fns[1].k_high = fns[1].k_low = 2.0;
  fns[2].kind = UtilityKind::TrendDeviation;
  return fns;
}

const WindowSpec kWindow{5, 10};

bool no_overlaps(const Summary& s) {
  for (std::size_t i = 0; i < s.entries.size(); ++i)
    for (std::size_t j = i + 1; j < s.entries.size(); ++j)
      if (windows_overlap(s.entries[i].window, s.entries[j].window)) return false;
  return true;
}

std::string summary_fingerprint(const Summary& s) {
  std::string fp;
  for (const auto& e : s.entries)
    fp += e.window.series_id + ":" + std::to_string(e.window.anchor) + ";";
  return fp;
}

void criterion_1_and_2(const SyntheticData& data, const std::vector<UtilityConfig>& fns) {
  bool c1 = true;
  std::string detail;
  char buf[160];
  Summary tw6;
  for (int m : {6, 8, 10}) {
    SelectionConfig cfg;
    cfg.target_size = m;
    cfg.diversity = DiversityKind::TimeWarp;
    auto t0 = std::chrono::steady_clock::now();
    auto s = insights_select(data.dataset, kWindow, fns, cfg);
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    double cov = event_coverage(s, data.annotations);
    double ex = event_examples(s, data.annotations);
    if (m == 6) tw6 = s;
    std::snprintf(buf, sizeof buf, "m=%d cov=%.0f%% ex=%.1f%% %.1fs; ", m, 100 * cov,
                  100 * ex, secs);
    detail += buf;
    if (!(cov >= 0.75 && ex >= 0.90 && secs < 120.0)) c1 = false;
  }
  report(1, "INSIGHTS-TW event capture (gate cov>=75%, ex>=90%, <2min; target 100/100)",
         c1, detail);

  SelectionConfig ccfg;
  ccfg.target_size = 6;
  ccfg.diversity = DiversityKind::Critic;
  auto critic = insights_select(data.dataset, kWindow, fns, ccfg);
  double tw_cov = event_coverage(tw6, data.annotations);
  double cr_cov = event_coverage(critic, data.annotations);
  double cr_ex = event_examples(critic, data.annotations);
  std::snprintf(buf, sizeof buf, "tw cov=%.0f%% critic cov=%.0f%% critic ex=%.1f%%",
                100 * tw_cov, 100 * cr_cov, 100 * cr_ex);
  report(2, "variant ordering: tw cov >= critic cov, critic examples = 100%",
         tw_cov >= cr_cov && cr_ex >= 1.0 - 1e-12, buf);
}

void criterion_3(const SyntheticData& data) {
  double sum_ex = 0, sum_cov = 0;
  const int seeds = 20;
  for (int seed = 0; seed < seeds; ++seed) {
    SelectionConfig cfg;
    cfg.target_size = 6;
    cfg.seed = static_cast<std::uint64_t>(seed);
    auto s = random_select(data.dataset, kWindow, cfg);
    sum_ex += event_examples(s, data.annotations);
    sum_cov += event_coverage(s, data.annotations);
  }
  double mean_ex = sum_ex / seeds, mean_cov = sum_cov / seeds;
  char buf[96];
  std::snprintf(buf, sizeof buf, "mean ex=%.1f%% mean cov=%.1f%% over %d seeds",
                100 * mean_ex, 100 * mean_cov, seeds);
  report(3, "random baseline gap at m=6 (mean ex<40%, mean cov<60%)",
         mean_ex < 0.40 && mean_cov < 0.60, buf);
}

void criterion_4() {
  std::vector<long> sizes{10000, 100000, 1000000};
  std::vector<std::string> methods{"insights-tw"};
  GeneratorConfig base;
  auto rows = bench_scaling(sizes, methods, 3, base);
  std::vector<double> n, wall, mem;
  for (long sz : sizes) {
    long actual = std::max(1L, sz / base.length) * base.length;
    std::vector<double> w, p;
    for (const auto& r : rows)
      if (r.n == actual) {
        w.push_back(r.wall_ms);
        p.push_back(static_cast<double>(r.peak_bytes));
      }
    std::sort(w.begin(), w.end());
    std::sort(p.begin(), p.end());
    n.push_back(static_cast<double>(actual));
    wall.push_back(w[w.size() / 2]);
    mem.push_back(p[p.size() / 2]);
  }
  double slope = loglog_slope(n, wall);
  double r2 = linear_r2(n, mem);
  char buf[128];
  std::snprintf(buf, sizeof buf, "time slope=%.3f mem R2=%.4f (medians of 3 trials)",
                slope, r2);
  report(4, "complexity: log-log time slope < 1.3, memory linear R2 >= 0.95",
         slope < 1.3 && r2 >= 0.95, buf);
}

void criterion_5() {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> len(1, 8);
  std::normal_distribution<double> dist(0.0, 3.0);
  int bad = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> a(len(rng)), b(len(rng));
    for (auto& v : a) v = dist(rng);
    for (auto& v : b) v = dist(rng);
    if (std::abs(dtw_distance(a, b) - oracle::dtw_enumerate(a, b)) > 1e-9) ++bad;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d mismatches of 1000 pairs", bad);
  report(5, "dtw equals exhaustive path enumeration within 1e-9", bad == 0, buf);
}

Dataset random_dataset(std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 3.0);
  Dataset d;
  int ns = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int s = 0; s < ns; ++s) {
    Series ser;
    ser.id = "s" + std::to_string(s);
    int n = std::uniform_int_distribution<int>(40, 120)(rng);
    for (int t = 0; t < n; ++t) ser.values.push_back(dist(rng));
    d.series.push_back(std::move(ser));
  }
  return d;
}

void criterion_6() {
  std::mt19937_64 rng(99);
  WindowSpec w{2, 6};
  bool first_pick_ok = true, overlap_ok = true, repeat_ok = true, scale_ok = true;
  for (int rep = 0; rep < 100; ++rep) {
    Dataset d = random_dataset(rng);
    std::vector<UtilityConfig> fns(2);
    fns[0].kind = UtilityKind::Trend;
    fns[1].kind = UtilityKind::TrendDeviation;
    SelectionConfig cfg;
    cfg.target_size = 3;
    cfg.diversity = rep % 2 ? DiversityKind::Critic : DiversityKind::TimeWarp;

    Summary s;
    try {
      s = insights_select(d, w, fns, cfg);
    } catch (const InfeasibleSelection&) {
      continue;
    }

    auto anchors = enumerate_windows(d, w);
    auto buckets = build_buckets(d, w, fns, anchors);
    auto order = bucket_order(buckets);
    double top = *std::max_element(buckets[order[0]].scores.begin(),
                                   buckets[order[0]].scores.end());
    if (s.entries[0].utility_score != top) first_pick_ok = false;
    if (!no_overlaps(s)) overlap_ok = false;
    if (summary_fingerprint(insights_select(d, w, fns, cfg)) != summary_fingerprint(s))
      repeat_ok = false;

    // (d) scaling one bucket's scores by c > 0
    auto scaled = fns;
    scaled[0].w_rise = fns[0].w_rise * 2.5;
    scaled[0].w_fall = fns[0].w_fall * 2.5;
    auto b2 = build_buckets(d, w, scaled, anchors);
    if (b2[0].queue != buckets[0].queue) scale_ok = false;
    if (std::abs(b2[0].rl - buckets[0].rl) > 1e-9 * std::max(1.0, buckets[0].rl))
      scale_ok = false;
  }

  // (c) across thread counts, on the bundled benchmark at reduced size
  GeneratorConfig g;
  g.n_series = 50;
  auto data = generate_synthetic(g);
  SelectionConfig cfg;
  cfg.target_size = 6;
  auto fns = benchmark_utilities(g);
#ifdef TSS_HAVE_OPENMP
  omp_set_num_threads(1);
  auto s1 = insights_select(data.dataset, kWindow, fns, cfg);
  omp_set_num_threads(omp_get_num_procs());
  auto s2 = insights_select(data.dataset, kWindow, fns, cfg);
#else
  auto s1 = insights_select(data.dataset, kWindow, fns, cfg);
  auto s2 = insights_select(data.dataset, kWindow, fns, cfg);
#endif
  bool threads_ok = summary_fingerprint(s1) == summary_fingerprint(s2);
  for (std::size_t i = 0; i < s1.entries.size() && threads_ok; ++i)
    if (s1.entries[i].window.values != s2.entries[i].window.values ||
        s1.entries[i].utility_score != s2.entries[i].utility_score)
      threads_ok = false;

  char buf[160];
  std::snprintf(buf, sizeof buf, "first-pick=%d overlap=%d repeat=%d threads=%d scaling=%d",
                first_pick_ok, overlap_ok, repeat_ok, threads_ok, scale_ok);
  report(6, "algorithm invariants (100 random datasets + thread counts)",
         first_pick_ok && overlap_ok && repeat_ok && threads_ok && scale_ok, buf);
}

void criterion_7() {
  bool ok = true;
  auto expect = [&](bool cond) {
    if (!cond) ok = false;
  };

  auto window_of = [](std::vector<double> v) {
    Window w;
    w.series_id = "a";
    w.values = std::move(v);
    w.anchor = 0;
    w.start = 0;
    w.end = static_cast<int>(w.values.size()) - 1;
    return w;
  };

  // trivial analytic cases
  expect(slope(std::vector<double>{0, 1, 2, 3}) == 1.0);
  expect(slope(std::vector<double>{5, 5, 5, 5}) == 0.0);
  Series st{"a", {0, 0, 0, 0, 0, 10}};
  expect(naive_slope(st, 5, 5) == 2.0);
  Series sq{"a", {0, 1, 4, 9}};
  expect(naive_slope(sq, 3, 3) == 3.0);

  UtilityConfig tc;
  tc.kind = UtilityKind::Trend;
  tc.w_rise = 1;
  tc.w_fall = 0;
  expect(trend_utility(window_of({0, 2, 4, 6}), tc) == 4.0);
  tc.w_fall = 2;
  expect(trend_utility(window_of({0, -3, -6, -9}), tc) == 18.0);
  tc.w_rise = tc.w_fall = 1;
  expect(trend_utility(window_of({7, 7, 7, 7}), tc) == 0.0);

  UtilityConfig rc;
  rc.kind = UtilityKind::Range;
  rc.tau_low = -5;
  rc.tau_high = 5;
  rc.k_high = rc.k_low = 3;
  expect(std::abs(range_utility(0.0, rc)) < 1e-4);
  expect(std::abs(range_utility(5.0, rc)) < 1e-4);
  expect(std::abs(range_utility(1e9, rc) - 1.0) < 1e-9);

  // randomized shift invariance and c^2 scaling at 1e-9
  std::mt19937_64 rng(7);
  std::normal_distribution<double> dist(0.0, 4.0);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> scale(0.1, 4.0);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<double> v(11);
    for (auto& x : v) x = dist(rng);
    Window w = window_of(v);
    double base = trend_utility(w, tc);
    Window ws = w;
    double c = u(rng);
    for (auto& x : ws.values) x += c;
    expect(std::abs(trend_utility(ws, tc) - base) <= 1e-9 * std::max(1.0, base));

    UtilityConfig up;
    up.kind = UtilityKind::Trend;
    up.w_rise = 1;
    up.w_fall = 0;
    double k = scale(rng);
    Window wk = w;
    for (auto& x : wk.values) x *= k;
    double lhs = trend_utility(wk, up);
    double rhs = k * k * trend_utility(w, up);
    expect(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs));
  }
  report(7, "utility analytic suite (exact cases + randomized invariances)", ok, "");
}

}  // namespace

int main() {
  GeneratorConfig g;  // 1000 series x 500 points, seed 7
  auto data = generate_synthetic(g);
  auto fns = benchmark_utilities(g);

  criterion_1_and_2(data, fns);
  criterion_3(data);
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
