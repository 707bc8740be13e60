#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "submin/errors.hpp"
#include "submin_cli/cli.hpp"

namespace submin::cli {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
constexpr double kWidth = 720.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle(double pad_fraction) {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double pad = pad_fraction * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

// Plot frame at vertical offset `top` with height `height`.
struct Frame {
  double top;
  double height;
  Range x;
  Range y;

  double px(double v) const { return kLeft + (v - x.lo) / (x.hi - x.lo) * (kWidth - kLeft - kRight); }
  double py(double v) const { return top + height - (v - y.lo) / (y.hi - y.lo) * height; }
};

void validate(const std::vector<Series>& series) {
  bool any = false;
  for (const Series& s : series) {
    if (s.x.size() != s.y.size()) throw InvalidArgument("series '" + s.label + "' has mismatched x and y");
    any = any || !s.x.empty();
  }
  if (!any) throw InvalidArgument("nothing to plot");
}

std::string header(double height, const std::string& title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{:.1f}\" y=\"22\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
      kWidth, height, kWidth, height, (kWidth - kRight + kLeft) / 2.0, escape(title));
}

std::string axes(const Frame& f) {
  return fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"black\"/>\n",
                     kLeft, f.top, kWidth - kLeft - kRight, f.height);
}

std::string x_ticks(const Frame& f, const std::string& label) {
  std::string out;
  const double span = f.x.hi - f.x.lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  const double bottom = f.top + f.height;
  for (double v = std::ceil(f.x.lo / step) * step; v <= f.x.hi + 1e-9 * step; v += step) {
    const double x = f.px(v);
    out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n", x, bottom,
                       bottom + 5.0);
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{:g}</text>\n",
        x, bottom + 18.0, v);
  }
  out += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
      (kWidth - kRight + kLeft) / 2.0, bottom + 36.0, escape(label));
  return out;
}

std::string y_label(const Frame& f, const std::string& label) {
  const double y = f.top + f.height / 2.0;
  return fmt::format(
      "<text x=\"20\" y=\"{0:.1f}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 20 {0:.1f})\">{1}</text>\n",
      y, escape(label));
}

std::string draw_series(const Frame& f, const Series& s, std::size_t index, const std::function<double(double)>& map_y) {
  const char* color = kPalette[index % std::size(kPalette)];
  std::string out;
  if (s.x.size() >= 2 && !s.markers_only) {
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"", color);
    for (std::size_t m = 0; m < s.x.size(); ++m) {
      out += fmt::format("{}{:.2f},{:.2f}", m == 0 ? "" : " ", f.px(s.x[m]), f.py(map_y(s.y[m])));
    }
    out += "\"/>\n";
  } else {
    for (std::size_t m = 0; m < s.x.size(); ++m) {
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"{}\"/>\n", f.px(s.x[m]),
                         f.py(map_y(s.y[m])), color);
    }
  }
  return out;
}

std::string legend(const Frame& f, const std::vector<Series>& series) {
  std::string out;
  const double x = kWidth - kRight + 12.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = f.top + 14.0 + 18.0 * static_cast<double>(i);
    out += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"14\" height=\"4\" fill=\"{}\"/>\n", x, y - 4.0,
                       kPalette[i % std::size(kPalette)]);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                       x + 20.0, y, escape(series[i].label));
  }
  return out;
}

std::string linear_panel(const std::vector<Series>& series, double top, double height, const Range& x,
                         const std::string& x_label, const std::string& ylab) {
  Frame f{top, height, x, {}};
  for (const Series& s : series) {
    for (double v : s.y) f.y.add(v);
  }
  f.y.settle(0.05);
  std::string out = axes(f);
  const double step = (f.y.hi - f.y.lo) / 4.0;
  for (int t = 0; t <= 4; ++t) {
    const double v = f.y.lo + step * t;
    out += fmt::format(
        "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.2f}</text>\n",
        kLeft - 6.0, f.py(v) + 4.0, v);
  }
  const auto identity = [](double v) { return v; };
  for (std::size_t i = 0; i < series.size(); ++i) out += draw_series(f, series[i], i, identity);
  out += legend(f, series);
  if (!x_label.empty()) out += x_ticks(f, x_label);
  out += y_label(f, ylab);
  return out;
}

}  // namespace

std::string gap_plot_svg(const std::vector<Series>& series, const std::string& title) {
  validate(series);
  constexpr double height = 440.0;
  Frame f{kTop, height - kTop - kBottom, {}, {}};
  double smallest = std::numeric_limits<double>::infinity();
  double largest = 0.0;
  for (const Series& s : series) {
    for (double v : s.x) f.x.add(v);
    for (double v : s.y) {
      if (v > 0.0 && std::isfinite(v)) {
        smallest = std::min(smallest, v);
        largest = std::max(largest, v);
      }
    }
  }
  if (!(f.x.hi > f.x.lo)) f.x.settle(0.0);
  double floor_value = std::isfinite(smallest) ? smallest / 10.0 : 1e-16;
  if (largest <= 0.0) largest = 1.0;
  f.y.lo = std::floor(std::log10(floor_value));
  f.y.hi = std::ceil(std::log10(largest));
  if (f.y.hi <= f.y.lo) f.y.hi = f.y.lo + 1.0;
  floor_value = std::pow(10.0, f.y.lo);
  const auto to_log = [floor_value](double v) { return std::log10(v > floor_value ? v : floor_value); };

  std::string out = header(height, title);
  out += axes(f);
  const int decades = static_cast<int>(f.y.hi - f.y.lo);
  const int label_every = decades > 10 ? 2 : 1;
  for (int d = 0; d <= decades; ++d) {
    const double e = f.y.lo + d;
    const double y = f.py(e);
    out += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#dddddd\"/>\n", kLeft, y,
                       kWidth - kRight, y);
    if (d % label_every == 0) {
      out += fmt::format(
          "<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e{:.0f}</text>\n",
          kLeft - 6.0, y + 4.0, e);
    }
  }
  for (std::size_t i = 0; i < series.size(); ++i) out += draw_series(f, series[i], i, to_log);
  out += legend(f, series);
  out += x_ticks(f, "iteration");
  out += y_label(f, "certified gap (log scale)");
  out += "</svg>\n";
  return out;
}

std::string signal_plot_svg(const std::vector<Series>& observed, const std::vector<Series>& fitted,
                            const std::string& title) {
  validate(observed);
  validate(fitted);
  constexpr double panel = 220.0;
  constexpr double gap = 30.0;
  const double height = kTop + panel + gap + panel + kBottom;
  Range x;
  for (const auto* group : {&observed, &fitted}) {
    for (const Series& s : *group) {
      for (double v : s.x) x.add(v);
    }
  }
  if (!(x.hi > x.lo)) x.settle(0.0);
  std::string out = header(height, title);
  out += linear_panel(observed, kTop, panel, x, "", "observed");
  out += linear_panel(fitted, kTop + panel + gap, panel, x, "index", "estimate");
  out += "</svg>\n";
  return out;
}

}  // namespace submin::cli
