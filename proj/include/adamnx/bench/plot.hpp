// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace adamnx::bench {

struct PlotSeries {
  std::string label;
  /// Empty means 1, 2, ..., y.size().
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string x_label = "iteration t";
  std::string y_label = "training loss (smoothed)";
  int width = 800;
  int height = 500;
};

/// Self-contained SVG line chart: one <polyline> per series, axes, tick
/// labels and a legend. Output depends only on the inputs.
std::string render_svg(std::span<const PlotSeries> series,
                       const PlotOptions& options = {});

void emit_plot(std::span<const PlotSeries> series,
               const std::filesystem::path& path,
               const PlotOptions& options = {});

}  // namespace adamnx::bench
