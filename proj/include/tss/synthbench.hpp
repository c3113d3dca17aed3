#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tss/core.hpp"
#include "tss/selection.hpp"

namespace tss {

/// Seasonal base signal plus four injected, annotated event types:
/// evolving ramps, up/down surges, and sustained out-of-bounds excursions.
struct GeneratorConfig {
  int n_series = 1000;
  int length = 500;
  double period = 100.0;
  double amplitude = 10.0;
  double noise_sigma = 0.5;

  // per-series injection probability for each event type
  double evolving_rate = 0.1;
  double surge_up_rate = 0.1;
  double surge_down_rate = 0.1;
  double out_of_bounds_rate = 0.1;

  // Events are placed in disjoint phase bands of the seasonal cycle (ramps in
  // troughs, surges near zero crossings, excursions at peaks) so that each
  // event type dominates exactly one utility on the benchmark.
  double evolving_magnitude = 24.0;  // triangle bump peak
  int evolving_duration = 20;
  double surge_magnitude = 12.0;
  int surge_width = 3;
  double out_of_bounds_margin = 10.5;  // plateau height past the norm threshold
  int out_of_bounds_duration = 36;     // includes linear entry and exit ramps

  std::uint64_t seed = 7;

  // norm thresholds implied by the base signal; range utilities should use
  // these same values
  double tau_high() const { return amplitude + 3.0 * noise_sigma; }
  double tau_low() const { return -tau_high(); }

  void validate() const;
};

struct SyntheticData {
  Dataset dataset;
  std::vector<EventAnnotation> annotations;
};

/// Deterministic per seed (independent per-series RNG streams); annotations
/// within a series never overlap.
SyntheticData generate_synthetic(const GeneratorConfig& cfg);

/// Fraction of event types with at least one annotation intersected by a
/// summary window. Throws on empty annotations.
double event_coverage(const Summary& summary, std::span<const EventAnnotation> anns);

/// Fraction of summary windows intersecting at least one annotation.
/// Throws on empty summary.
double event_examples(const Summary& summary, std::span<const EventAnnotation> anns);

struct CaptureReport {
  int size = 0;
  double coverage = 0.0;
  double examples = 0.0;
  std::map<std::string, int> per_type_hits;   // types captured (0/1 per type)
  std::map<std::string, int> per_type_total;  // annotation counts per type
};

CaptureReport capture_report(const Summary& summary,
                             std::span<const EventAnnotation> anns);

struct BenchRow {
  long n = 0;
  std::string method;
  int trial = 0;
  double wall_ms = 0.0;
  std::size_t peak_bytes = 0;
};

/// Runs the full pipeline (generate + summarize) per size and method, taking
/// the median-of-trials view downstream. Methods: "insights-tw",
/// "insights-critic", "random". Peak memory comes from the allocator
/// high-water tracker when the host binary enables it, else 0.
std::vector<BenchRow> bench_scaling(std::span<const long> sizes,
                                    std::span<const std::string> methods,
                                    int trials, const GeneratorConfig& base);

void save_bench_csv(std::span<const BenchRow> rows, const std::filesystem::path& path);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// R^2 of an ordinary linear fit y ~ a + b x.
double linear_r2(std::span<const double> x, std::span<const double> y);

}  // namespace tss
