#include "tncopt/harness/plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tncopt::harness {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 24.0;
constexpr double kTop = 48.0;
constexpr double kBottom = 64.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo;
  double hi;
};

// Decade-aligned range (log10 units) covering the values, padded when flat.
Range decade_range(const std::vector<double>& log10_values) {
  auto [mn, mx] = std::minmax_element(log10_values.begin(), log10_values.end());
  double lo = std::floor(*mn);
  double hi = std::ceil(*mx);
  if (hi - lo < 1.0) hi = lo + 1.0;
  return {lo, hi};
}

// Clips the line y = y0 + s (x - x0) to the plot box and returns its endpoints.
bool clip_line(double x0, double y0, double s, Range xr, Range yr, double out[4]) {
  double xa = xr.lo, xb = xr.hi;
  if (s != 0.0) {
    const double x_at_lo = x0 + (yr.lo - y0) / s;
    const double x_at_hi = x0 + (yr.hi - y0) / s;
    xa = std::max(xa, std::min(x_at_lo, x_at_hi));
    xb = std::min(xb, std::max(x_at_lo, x_at_hi));
  } else if (y0 < yr.lo || y0 > yr.hi) {
    return false;
  }
  if (xa >= xb) return false;
  out[0] = xa;
  out[1] = y0 + s * (xa - x0);
  out[2] = xb;
  out[3] = y0 + s * (xb - x0);
  return true;
}

std::string render(const std::vector<double>& lx, const std::vector<double>& ly, double slope,
                   double intercept, const PlotOptions& options) {
  // Inputs are natural logs; axes are in decades.
  const double ln10 = std::log(10.0);
  std::vector<double> dx, dy;
  for (double v : lx) dx.push_back(v / ln10);
  for (double v : ly) dy.push_back(v / ln10);
  const Range xr = decade_range(dx);
  const Range yr = decade_range(dy);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double d) { return kLeft + (d - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double d) { return kTop + (yr.hi - d) / (yr.hi - yr.lo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(options.title) << "</text>\n";
  }
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int d = static_cast<int>(xr.lo); d <= static_cast<int>(xr.hi); ++d) {
    svg << "<line x1=\"" << num(px(d)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(d))
        << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(px(d)) << "\" y=\"" << num(kTop + ph + 20)
        << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(yr.lo); d <= static_cast<int>(yr.hi); ++d) {
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(d)) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(py(d)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(d) + 4)
        << "\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 16)
      << "\" text-anchor=\"middle\">" << escape(options.x_label) << "</text>\n";
  svg << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(kTop + ph / 2) << ")\">" << escape(options.y_label) << "</text>\n";

  // Slopes are unchanged by the ln -> log10 rescaling of both axes.
  double seg[4];
  if (clip_line(0.0, intercept / ln10, slope, xr, yr, seg)) {
    svg << "<line x1=\"" << num(px(seg[0])) << "\" y1=\"" << num(py(seg[1])) << "\" x2=\""
        << num(px(seg[2])) << "\" y2=\"" << num(py(seg[3]))
        << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  }
  double legend_y = kTop + 18;
  svg << "<text x=\"" << num(kLeft + pw - 8) << "\" y=\"" << num(legend_y)
      << "\" text-anchor=\"end\" fill=\"#1f77b4\">fit: " << format_slope(slope) << "</text>\n";

  if (options.theory_slope) {
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < dx.size(); ++i) {
      cx += dx[i];
      cy += dy[i];
    }
    cx /= dx.size();
    cy /= dy.size();
    if (clip_line(cx, cy, *options.theory_slope, xr, yr, seg)) {
      svg << "<line x1=\"" << num(px(seg[0])) << "\" y1=\"" << num(py(seg[1])) << "\" x2=\""
          << num(px(seg[2])) << "\" y2=\"" << num(py(seg[3]))
          << "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    }
    legend_y += 18;
    svg << "<text x=\"" << num(kLeft + pw - 8) << "\" y=\"" << num(legend_y)
        << "\" text-anchor=\"end\" fill=\"#d62728\">theory: " << format_slope(*options.theory_slope)
        << "</text>\n";
  }

  for (std::size_t i = 0; i < dx.size(); ++i) {
    svg << "<circle cx=\"" << num(px(dx[i])) << "\" cy=\"" << num(py(dy[i]))
        << "\" r=\"4\" fill=\"black\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string format_slope(double slope) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(slope));
  // Rounds to zero without a sign.
  const bool negative = slope < 0.0 && std::string(buf) != "0.000";
  return (negative ? "−" : "") + std::string(buf);
}

std::string render_svg(const std::vector<double>& x, const std::vector<double>& y,
                       const PlotOptions& options) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  if (x.size() < 2) throw std::invalid_argument("a plot needs at least 2 points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("log-log plots need positive values");
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const LineFit fit = fit_line(lx, ly);
  return render(lx, ly, fit.slope, fit.intercept, options);
}

std::string render_svg(const RateFit& fit, const PlotOptions& options) {
  if (fit.x.size() < 2 || fit.x.size() != fit.y.size()) {
    throw std::invalid_argument("a plot needs at least 2 points");
  }
  return render(fit.x, fit.y, fit.slope, fit.intercept, options);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void emit_plot(const std::vector<SweepRow>& rows, ErrorColumn column, const PlotOptions& options,
               const std::string& path) {
  std::vector<double> x, y;
  for (const auto& m : summarize(rows)) {
    x.push_back(static_cast<double>(m.T));
    y.push_back(column == ErrorColumn::kFunction ? m.f_error : m.point_error);
  }
  write_text(path, render_svg(x, y, options));
}

void emit_plot(const RateFit& fit, const PlotOptions& options, const std::string& path) {
  write_text(path, render_svg(fit, options));
}

}  // namespace tncopt::harness
