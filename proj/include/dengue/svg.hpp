#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "dengue/grid.hpp"
#include "dengue/io.hpp"

namespace dengue {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct TimeseriesPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

/// Observed points, central curve and shaded credible band.
struct BandPlot {
    std::string title;
    std::vector<double> x;
    std::vector<double> observed;
    std::vector<double> center;
    std::vector<double> lower;
    std::vector<double> upper;
};

struct HeatmapPlot {
    std::string title;
    std::string value_label;
    GridResult grid;
};

/// Transmission-rate curve (left axis) over monthly rainfall bars (right axis).
struct SeasonalRainfallPlot {
    std::string title;
    std::vector<double> t;
    std::vector<double> beta;
    RainfallSeries rainfall;
};

using Plot = std::variant<TimeseriesPlot, BandPlot, HeatmapPlot, SeasonalRainfallPlot>;

/// Heatmap color ramp: piecewise-linear through the five viridis anchors
/// #440154, #3b528b, #21918c, #5ec962, #fde725 over [0, 1]. Returns "#rrggbb".
std::string ramp_color(double fraction);

/// Standalone SVG document; identical input gives identical bytes. Throws
/// DataError for empty or inconsistent data.
std::string render_svg(const Plot& plot);

void emit_plot(const Plot& plot, const std::filesystem::path& path);

}  // namespace dengue
