#include "tss/synthbench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>

#include "tss/mem_tracker.hpp"

namespace tss {

void GeneratorConfig::validate() const {
  if (n_series < 1) throw ValidationError("generator: n_series must be >= 1");
  if (length < 10) throw ValidationError("generator: length must be >= 10");
  if (period <= 0) throw ValidationError("generator: period must be positive");
  if (noise_sigma < 0) throw ValidationError("generator: noise_sigma must be >= 0");
  for (auto [rate, name] : {std::pair{evolving_rate, "evolving_rate"},
                            {surge_up_rate, "surge_up_rate"},
                            {surge_down_rate, "surge_down_rate"},
                            {out_of_bounds_rate, "out_of_bounds_rate"}}) {
    if (rate < 0.0 || rate > 1.0)
      throw ValidationError(std::string("generator: ") + name + " must be in [0,1]");
  }
  if (evolving_duration < 2 || surge_width < 1 || out_of_bounds_duration < 1)
    throw ValidationError("generator: event durations must be positive");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Interval {
  int start, end;
};

bool interval_free(const std::vector<Interval>& used, int s, int e) {
  for (const auto& iv : used)
    if (s <= iv.end && iv.start <= e) return false;
  return true;
}

// draws a start so the whole interval satisfies the phase-band predicate and
// avoids every already-used interval; -1 when the band cannot host it
template <class Pred>
int place_interval(std::mt19937_64& rng, std::vector<Interval>& used, int series_len,
                   int dur, Pred&& in_band) {
  if (dur > series_len) throw InfeasibleError("generator: event longer than series");
  std::uniform_int_distribution<int> pos(0, series_len - dur);
  for (int attempt = 0; attempt < 200; ++attempt) {
    int s = pos(rng);
    if (!interval_free(used, s, s + dur - 1)) continue;
    bool ok = true;
    for (int t = s; t < s + dur && ok; ++t) ok = in_band(t);
    if (!ok) continue;
    used.push_back({s, s + dur - 1});
    return s;
  }
  return -1;
}

}  // namespace

SyntheticData generate_synthetic(const GeneratorConfig& cfg) {
  cfg.validate();
  SyntheticData out;
  out.dataset.series.reserve(cfg.n_series);

  const double two_pi = 2.0 * std::numbers::pi;
  const int oob_dur = cfg.out_of_bounds_duration;
  const int oob_ramp = std::min(oob_dur * 5 / 12, (oob_dur - 1) / 2);

  char idbuf[32];
  for (int i = 0; i < cfg.n_series; ++i) {
    std::mt19937_64 rng(splitmix64(cfg.seed) ^ splitmix64(static_cast<std::uint64_t>(i) + 1));
    std::snprintf(idbuf, sizeof idbuf, "s%06d", i);

    std::uniform_real_distribution<double> uphase(0.0, two_pi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, cfg.noise_sigma);

    const bool has_evolving = u01(rng) < cfg.evolving_rate;
    const bool has_surge_up = u01(rng) < cfg.surge_up_rate;
    const bool has_surge_down = u01(rng) < cfg.surge_down_rate;
    const bool has_oob = u01(rng) < cfg.out_of_bounds_rate;

    // events live in disjoint bands of the seasonal cycle; a phase whose bands
    // straddle the series boundary may be unplaceable, so redraw it
    double phase = 0.0;
    int ev_start = -1, su_start = -1, sd_start = -1, oob_start = -1;
    bool placed = false;
    std::vector<Interval> used;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      phase = uphase(rng);
      auto seasonal = [&](int t) {
        return cfg.amplitude * std::sin(two_pi * t / cfg.period + phase);
      };
      auto trough = [&](int t) { return seasonal(t) <= -0.5 * cfg.amplitude; };
      auto mid = [&](int t) { return std::abs(seasonal(t)) <= 0.25 * cfg.amplitude; };
      auto peak = [&](int t) { return seasonal(t) >= 0.3 * cfg.amplitude; };

      used.clear();
      placed = true;
      if (has_evolving &&
          (ev_start = place_interval(rng, used, cfg.length, cfg.evolving_duration,
                                     trough)) < 0)
        placed = false;
      if (placed && has_surge_up &&
          (su_start = place_interval(rng, used, cfg.length, cfg.surge_width, mid)) < 0)
        placed = false;
      if (placed && has_surge_down &&
          (sd_start = place_interval(rng, used, cfg.length, cfg.surge_width, mid)) < 0)
        placed = false;
      if (placed && has_oob &&
          (oob_start = place_interval(rng, used, cfg.length, oob_dur, peak)) < 0)
        placed = false;
    }
    if (!placed)
      throw InfeasibleError("generator: could not place non-overlapping events in series " +
                            std::string(idbuf));

    Series s;
    s.id = idbuf;
    s.values.resize(cfg.length);
    for (int t = 0; t < cfg.length; ++t)
      s.values[t] = cfg.amplitude * std::sin(two_pi * t / cfg.period + phase) + noise(rng);

    if (has_evolving) {
      // triangle bump: zero at the edges, magnitude at the midpoint
      const int d = cfg.evolving_duration;
      for (int k = 0; k < d; ++k)
        s.values[ev_start + k] +=
            cfg.evolving_magnitude * (1.0 - std::abs(2.0 * k - (d - 1)) / (d - 1));
      out.annotations.push_back({s.id, ev_start, ev_start + d - 1, "evolving"});
    }
    if (has_surge_up) {
      for (int k = 0; k < cfg.surge_width; ++k)
        s.values[su_start + k] += cfg.surge_magnitude;
      out.annotations.push_back({s.id, su_start, su_start + cfg.surge_width - 1, "surge_up"});
    }
    if (has_surge_down) {
      for (int k = 0; k < cfg.surge_width; ++k)
        s.values[sd_start + k] -= cfg.surge_magnitude;
      out.annotations.push_back(
          {s.id, sd_start, sd_start + cfg.surge_width - 1, "surge_down"});
    }
    if (has_oob) {
      // plateau past the norm threshold with linear entry and exit ramps,
      // keeping the local slope below an evolving ramp's
      std::normal_distribution<double> jitter(0.0, cfg.noise_sigma / 2.0);
      const double level = cfg.tau_high() + cfg.out_of_bounds_margin;
      for (int k = 0; k < oob_dur; ++k) {
        double f = 1.0;
        if (oob_ramp > 0) {
          if (k < oob_ramp)
            f = (k + 1) / static_cast<double>(oob_ramp);
          else if (k >= oob_dur - oob_ramp)
            f = (oob_dur - k) / static_cast<double>(oob_ramp);
        }
        double& v = s.values[oob_start + k];
        v = v * (1.0 - f) + (level + jitter(rng)) * f;
      }
      out.annotations.push_back(
          {s.id, oob_start, oob_start + oob_dur - 1, "out_of_bounds"});
    }

    out.dataset.series.push_back(std::move(s));
  }
  return out;
}

namespace {

bool window_hits(const Window& w, const EventAnnotation& a) {
  return w.series_id == a.series_id && spans_overlap(w.start, w.end, a.start, a.end);
}

}  // namespace

double event_coverage(const Summary& summary, std::span<const EventAnnotation> anns) {
  if (anns.empty()) throw ValidationError("event_coverage: empty annotation set");
  std::set<std::string> all_types, hit_types;
  for (const auto& a : anns) {
    all_types.insert(a.event_type);
    for (const auto& e : summary.entries)
      if (window_hits(e.window, a)) {
        hit_types.insert(a.event_type);
        break;
      }
  }
  return static_cast<double>(hit_types.size()) / static_cast<double>(all_types.size());
}

double event_examples(const Summary& summary, std::span<const EventAnnotation> anns) {
  if (summary.entries.empty()) throw ValidationError("event_examples: empty summary");
  int hits = 0;
  for (const auto& e : summary.entries) {
    for (const auto& a : anns)
      if (window_hits(e.window, a)) {
        ++hits;  // a window counts once even with multiple events
        break;
      }
  }
  return static_cast<double>(hits) / static_cast<double>(summary.entries.size());
}

CaptureReport capture_report(const Summary& summary,
                             std::span<const EventAnnotation> anns) {
  CaptureReport r;
  r.size = static_cast<int>(summary.entries.size());
  r.coverage = event_coverage(summary, anns);
  r.examples = event_examples(summary, anns);
  for (const auto& a : anns) {
    r.per_type_total[a.event_type]++;
    if (!r.per_type_hits.count(a.event_type)) r.per_type_hits[a.event_type] = 0;
    if (r.per_type_hits[a.event_type] == 0)
      for (const auto& e : summary.entries)
        if (window_hits(e.window, a)) {
          r.per_type_hits[a.event_type] = 1;
          break;
        }
  }
  return r;
}

std::vector<BenchRow> bench_scaling(std::span<const long> sizes,
                                    std::span<const std::string> methods,
                                    int trials, const GeneratorConfig& base) {
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw ValidationError("bench_scaling: sizes must be strictly ascending");

  WindowSpec w{5, 10};
  std::vector<BenchRow> rows;
  for (long n : sizes) {
    GeneratorConfig gcfg = base;
    gcfg.n_series = std::max(1L, n / base.length);
    long actual_n = static_cast<long>(gcfg.n_series) * gcfg.length;
    for (const auto& method : methods) {
      for (int trial = 0; trial < trials; ++trial) {
        mem::reset_peak();
        std::size_t before = mem::current_bytes();
        auto t0 = std::chrono::steady_clock::now();

        auto data = generate_synthetic(gcfg);
        SelectionConfig scfg;
        scfg.target_size = 6;
        scfg.seed = static_cast<std::uint64_t>(trial);
        if (method == "random") {
          (void)random_select(data.dataset, w, scfg);
        } else if (method == "insights-tw" || method == "insights-critic") {
          scfg.diversity = method == "insights-tw" ? DiversityKind::TimeWarp
                                                   : DiversityKind::Critic;
          std::vector<UtilityConfig> fns(3);
          fns[0].kind = UtilityKind::Trend;
          fns[1].kind = UtilityKind::Range;
          fns[1].tau_high = gcfg.tau_high();
          fns[1].tau_low = gcfg.tau_low();
          fns[1].k_high = fns[1].k_low = 2.0;
          fns[2].kind = UtilityKind::TrendDeviation;
          (void)insights_select(data.dataset, w, fns, scfg);
        } else {
          throw ValidationError("bench_scaling: unknown method '" + method +
                                "' (expected insights-tw, insights-critic or random)");
        }

        auto t1 = std::chrono::steady_clock::now();
        BenchRow row;
        row.n = actual_n;
        row.method = method;
        row.trial = trial;
        row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        std::size_t peak = mem::peak_bytes();
        row.peak_bytes = peak > before ? peak - before : 0;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void save_bench_csv(std::span<const BenchRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "n,method,trial,wall_ms,peak_bytes\n";
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.3f", r.wall_ms);
    out << r.n << ',' << r.method << ',' << r.trial << ',' << buf << ',' << r.peak_bytes
        << '\n';
  }
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  double xbar = 0, ybar = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    xbar += lx[i];
    ybar += ly[i];
  }
  xbar /= lx.size();
  ybar /= ly.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - xbar) * (ly[i] - ybar);
    den += (lx[i] - xbar) * (lx[i] - xbar);
  }
  return num / den;
}

double linear_r2(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double xbar = 0, ybar = 0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += x[i];
    ybar += y[i];
  }
  xbar /= n;
  ybar /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - xbar) * (y[i] - ybar);
    sxx += (x[i] - xbar) * (x[i] - xbar);
    syy += (y[i] - ybar) * (y[i] - ybar);
  }
  if (syy == 0.0) return 1.0;
  return (sxy * sxy) / (sxx * syy);
}

}  // namespace tss
