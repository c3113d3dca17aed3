#include "tss/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace tss {

std::size_t Dataset::total_points() const {
  std::size_t n = 0;
  for (const auto& s : series) n += s.values.size();
  return n;
}

int Dataset::index_of(const std::string& id) const {
  auto it = std::lower_bound(series.begin(), series.end(), id,
                             [](const Series& s, const std::string& v) { return s.id < v; });
  if (it == series.end() || it->id != id) return -1;
  return static_cast<int>(it - series.begin());
}

const Series& Dataset::at(const std::string& id) const {
  int i = index_of(id);
  if (i < 0) throw ValidationError("unknown series id: " + id);
  return series[i];
}

void WindowSpec::validate() const {
  if (before < 0) throw ValidationError("window: b must be non-negative");
  if (length < 1) throw ValidationError("window: l must be positive");
  if (before > length) throw ValidationError("window: b must not exceed l");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

long parse_int(const std::string& s, std::size_t row, const char* what) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError("row " + std::to_string(row) + ": bad " + what + " '" + s + "'");
  return v;
}

double parse_double(const std::string& s, std::size_t row) {
  char* endp = nullptr;
  double v = std::strtod(s.c_str(), &endp);
  if (endp != s.c_str() + s.size() || s.empty())
    throw ParseError("row " + std::to_string(row) + ": bad value '" + s + "'");
  return v;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
  if (split_line(line) != std::vector<std::string>{"series_id", "t", "value"})
    throw ParseError(path.string() + ": expected header series_id,t,value");

  // collected per series in file order, then sorted by id
  std::map<std::string, std::vector<double>> by_id;
  std::map<std::string, long> next_t;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto cols = split_line(line);
    if (cols.size() != 3)
      throw ParseError("row " + std::to_string(row) + ": expected 3 columns, got " +
                       std::to_string(cols.size()));
    const std::string& id = cols[0];
    long t = parse_int(cols[1], row, "t");
    double v = parse_double(cols[2], row);
    if (!std::isfinite(v))
      throw ValidationError("row " + std::to_string(row) + ": non-finite value for series '" +
                            id + "' at t=" + std::to_string(t));
    long expect = next_t.count(id) ? next_t[id] : 0;
    if (t < expect)
      throw ValidationError("row " + std::to_string(row) + ": duplicate (series_id,t)=(" + id +
                            "," + std::to_string(t) + ")");
    if (t > expect)
      throw ValidationError("row " + std::to_string(row) + ": non-contiguous t for series '" +
                            id + "': expected " + std::to_string(expect) + ", got " +
                            std::to_string(t));
    next_t[id] = t + 1;
    by_id[id].push_back(v);
  }

  Dataset d;
  for (auto& [id, vals] : by_id) {
    if (vals.empty()) continue;
    d.series.push_back(Series{id, std::move(vals)});
  }
  if (d.series.empty()) throw ValidationError(path.string() + ": dataset has no series");
  return d;  // std::map iteration is already id-sorted
}

void save_dataset(const Dataset& d, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "series_id,t,value\n";
  char buf[64];
  for (const auto& s : d.series) {
    for (std::size_t t = 0; t < s.values.size(); ++t) {
      std::snprintf(buf, sizeof buf, "%.17g", s.values[t]);
      out << s.id << ',' << t << ',' << buf << '\n';
    }
  }
}

std::vector<EventAnnotation> load_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
  if (split_line(line) != std::vector<std::string>{"series_id", "start", "end", "event_type"})
    throw ParseError(path.string() + ": expected header series_id,start,end,event_type");
  std::vector<EventAnnotation> anns;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto cols = split_line(line);
    if (cols.size() != 4)
      throw ParseError("row " + std::to_string(row) + ": expected 4 columns");
    EventAnnotation a;
    a.series_id = cols[0];
    a.start = static_cast<int>(parse_int(cols[1], row, "start"));
    a.end = static_cast<int>(parse_int(cols[2], row, "end"));
    a.event_type = cols[3];
    if (a.start > a.end)
      throw ValidationError("row " + std::to_string(row) + ": start > end");
    anns.push_back(std::move(a));
  }
  return anns;
}

void save_annotations(std::span<const EventAnnotation> anns,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "series_id,start,end,event_type\n";
  for (const auto& a : anns)
    out << a.series_id << ',' << a.start << ',' << a.end << ',' << a.event_type << '\n';
}

std::vector<Anchor> enumerate_windows(const Dataset& d, const WindowSpec& w) {
  w.validate();
  std::vector<Anchor> anchors;
  for (int si = 0; si < static_cast<int>(d.series.size()); ++si) {
    int n = d.series[si].length();
    int lo = w.before;
    int hi = n - 1 - (w.length - w.before);
    for (int t = lo; t <= hi; ++t) anchors.push_back({si, t});
  }
  return anchors;
}

Window make_window(const Dataset& d, const Anchor& a, const WindowSpec& w) {
  const Series& s = d.series.at(a.series);
  Window win;
  win.series_id = s.id;
  win.anchor = a.t;
  win.start = a.t - w.before;
  win.end = a.t + (w.length - w.before);
  if (win.start < 0 || win.end >= s.length())
    throw ValidationError("anchor t=" + std::to_string(a.t) + " out of range for series " + s.id);
  win.values.assign(s.values.begin() + win.start, s.values.begin() + win.end + 1);
  return win;
}

bool spans_overlap(int a_start, int a_end, int b_start, int b_end, int gap) {
  return a_start <= b_end + gap && b_start <= a_end + gap;
}

bool windows_overlap(const Window& a, const Window& b, int gap) {
  if (a.series_id != b.series_id) return false;
  return spans_overlap(a.start, a.end, b.start, b.end, gap);
}

}  // namespace tss
