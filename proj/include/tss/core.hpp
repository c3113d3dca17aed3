#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tss {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input could not be parsed (bad CSV/JSON, schema mismatch).
struct ParseError : Error {
  using Error::Error;
};

/// Input parsed but violates a data invariant.
struct ValidationError : Error {
  using Error::Error;
};

/// A requested selection cannot be satisfied (e.g. m too large).
struct InfeasibleError : Error {
  using Error::Error;
};

struct Series {
  std::string id;
  std::vector<double> values;  // implicit time index 0..n-1

  int length() const { return static_cast<int>(values.size()); }
};

/// Collection of univariate series. Immutable after construction; safe for
/// concurrent reads.
struct Dataset {
  std::vector<Series> series;  // sorted by id, ids unique

  std::size_t total_points() const;
  const Series& at(const std::string& id) const;
  int index_of(const std::string& id) const;  // -1 if absent
};

/// Window geometry: a window anchored at t spans [t-before, t+(length-before)],
/// i.e. length+1 points with `before` points of history.
struct WindowSpec {
  int before = 0;  // b
  int length = 1;  // l, window has l+1 points

  int width() const { return length + 1; }
  void validate() const;
};

/// Anchor of a valid window: series index into Dataset::series plus time t.
struct Anchor {
  int series = 0;
  int t = 0;

  friend bool operator==(const Anchor&, const Anchor&) = default;
  friend auto operator<=>(const Anchor&, const Anchor&) = default;
};

struct Window {
  std::string series_id;
  int anchor = 0;
  int start = 0;
  int end = 0;
  std::vector<double> values;  // slice of the parent series over [start, end]
};

/// Ground-truth labeled interval, used only by the evaluation harness.
struct EventAnnotation {
  std::string series_id;
  int start = 0;
  int end = 0;
  std::string event_type;
};

/// Parses the long CSV format (header `series_id,t,value`). Validates
/// contiguity, finiteness and uniqueness; series come out sorted by id.
Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const Dataset& d, const std::filesystem::path& path);

/// Annotation CSV: header `series_id,start,end,event_type`.
std::vector<EventAnnotation> load_annotations(const std::filesystem::path& path);
void save_annotations(std::span<const EventAnnotation> anns,
                      const std::filesystem::path& path);

/// All valid anchors, per series, in (series, t) order.
std::vector<Anchor> enumerate_windows(const Dataset& d, const WindowSpec& w);

Window make_window(const Dataset& d, const Anchor& a, const WindowSpec& w);

/// True iff both windows sit on the same series and their index intervals,
/// each widened by `gap`, intersect. Cross-series windows never overlap.
bool windows_overlap(const Window& a, const Window& b, int gap = 0);

/// Interval form used by the selection loop (avoids materializing values).
bool spans_overlap(int a_start, int a_end, int b_start, int b_end, int gap = 0);

}  // namespace tss
