#include "tss/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tss::svg {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 360;
constexpr int kMargin = 48;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void open_svg(std::ostringstream& out, const std::string& title,
              const std::string& timestamp) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
  if (!timestamp.empty()) out << "<!-- generated: " << timestamp << " -->\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
}

}  // namespace

std::string window_chart(std::span<const double> values, int anchor_offset,
                         const std::string& title, const std::string& timestamp) {
  std::ostringstream out;
  open_svg(out, title, timestamp);
  if (!values.empty()) {
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (hi == lo) {
      hi += 1.0;
      lo -= 1.0;
    }
    double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto px = [&](std::size_t i) {
      return kMargin + (kWidth - 2.0 * kMargin) * (values.size() == 1 ? 0.5 : i / double(values.size() - 1));
    };
    auto py = [&](double v) {
      return kHeight - kMargin - (kHeight - 2.0 * kMargin) * (v - lo) / (hi - lo);
    };
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
        << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
        << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[0]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < values.size(); ++i)
      out << fmt(px(i)) << ',' << fmt(py(values[i])) << ' ';
    out << "\"/>\n";
    if (anchor_offset >= 0 && anchor_offset < static_cast<int>(values.size())) {
      out << "<circle cx=\"" << fmt(px(anchor_offset)) << "\" cy=\""
          << fmt(py(values[anchor_offset])) << "\" r=\"4\" fill=\"" << kPalette[1]
          << "\"/>\n";
    }
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 12
        << "\" font-family=\"sans-serif\" font-size=\"11\">min " << fmt(lo)
        << " / max " << fmt(hi) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string loglog_chart(std::span<const LogLogSeries> series, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::string& timestamp) {
  std::ostringstream out;
  open_svg(out, title, timestamp);
  double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] <= 0 || s.y[i] <= 0) continue;
      lx0 = std::min(lx0, std::log10(s.x[i]));
      lx1 = std::max(lx1, std::log10(s.x[i]));
      ly0 = std::min(ly0, std::log10(s.y[i]));
      ly1 = std::max(ly1, std::log10(s.y[i]));
    }
  if (lx0 > lx1) {
    lx0 = ly0 = 0;
    lx1 = ly1 = 1;
  }
  if (lx1 == lx0) lx1 = lx0 + 1;
  if (ly1 == ly0) ly1 = ly0 + 1;
  auto px = [&](double v) {
    return kMargin + (kWidth - 2.0 * kMargin) * (std::log10(v) - lx0) / (lx1 - lx0);
  };
  auto py = [&](double v) {
    return kHeight - kMargin -
           (kHeight - 2.0 * kMargin) * (std::log10(v) - ly0) / (ly1 - ly0);
  };
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
      << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (s.x[i] > 0 && s.y[i] > 0) out << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
    out << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (s.x[i] > 0 && s.y[i] > 0)
        out << "<circle cx=\"" << fmt(px(s.x[i])) << "\" cy=\"" << fmt(py(s.y[i]))
            << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin - 140 << "\" y=\"" << kMargin + 16 + 16 * si
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << color << "\">"
        << s.label << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
      << x_label << " (log)</text>\n";
  out << "<text x=\"14\" y=\"" << kHeight / 2
      << "\" font-family=\"sans-serif\" font-size=\"11\" transform=\"rotate(-90 14 "
      << kHeight / 2 << ")\" text-anchor=\"middle\">" << y_label << " (log)</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace tss::svg
