// Static log-log SVG plots of rate sweeps.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tncopt/harness/rate_fit.h"
#include "tncopt/harness/sweep.h"

namespace tncopt::harness {

struct PlotOptions {
  std::string title;
  std::string x_label = "T";
  std::string y_label = "mean error";
  // Dashed reference line through the data centroid, labelled "theory: <slope>".
  std::optional<double> theory_slope;
};

// Slope with three decimals and a U+2212 minus sign, e.g. "−1.000".
std::string format_slope(double slope);

// Scatter of (x, y) on log-log axes with its least-squares line. Needs >= 2
// points, all positive.
std::string render_svg(const std::vector<double>& x, const std::vector<double>& y,
                       const PlotOptions& options);
// Uses the fit's points (already in ln space) and its line.
std::string render_svg(const RateFit& fit, const PlotOptions& options);

void write_text(const std::string& path, const std::string& text);

// Per-budget means of `column` from a sweep table.
void emit_plot(const std::vector<SweepRow>& rows, ErrorColumn column, const PlotOptions& options,
               const std::string& path);
void emit_plot(const RateFit& fit, const PlotOptions& options, const std::string& path);

}  // namespace tncopt::harness
