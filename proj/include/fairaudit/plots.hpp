#pragma once

#include "fairaudit/report.hpp"
#include "fairaudit/serialize.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairaudit::plot {

/// Seven-hue palette; group i uses colour i mod 7.
inline constexpr std::array<std::string_view, 7> kPalette = {
    "#0072B2", "#D55E00", "#009E73", "#CC79A7", "#E69F00", "#56B4E9", "#7F4F24"};

enum class Mark { Line, Point, Diamond, Box };

std::string_view to_string(Mark mark);

using Column = std::vector<std::optional<double>>;

/// One drawable series. Columns by mark:
///   Line: x, y (null y breaks the line)
///   Point/Diamond: x, y, optional y_low/y_high whiskers
///   Box: x, q1, median, q3, whisker_low, whisker_high
struct Series {
    std::string name;
    std::string panel;
    std::string group;
    Mark mark = Mark::Point;
    std::size_t color = 0;
    std::map<std::string, Column> columns;
};

/// Horizontal guidance band, e.g. the 0.8-1.25 range around a reference level.
struct Band {
    double low = 0.0;
    double high = 0.0;
    std::string label;
};

struct Panel {
    std::string id;
    std::string title;
    std::string x_label;
    std::string y_label;
    std::optional<std::array<double, 2>> x_range;
    std::optional<std::array<double, 2>> y_range;
    /// Non-empty for categorical x axes; x values index into it.
    std::vector<std::string> x_categories;
    std::vector<Band> bands;
    bool diagonal = false;
};

struct LegendEntry {
    std::string label;
    std::size_t color = 0;
};

struct PlotDocument {
    std::string plot_id;
    std::string title;
    std::vector<Panel> panels;
    std::vector<Series> series;
    std::vector<LegendEntry> legend;
    std::vector<std::string> annotations;
};

/// One document per available panel: group_metrics, roc, calibration_curve,
/// calibration_large, distribution, number_needed.
std::vector<PlotDocument> emit_plots(const EvaluationResult& result);

Json to_json(const PlotDocument& doc);

/// Standalone SVG 1.1 document; identical input gives identical bytes.
std::string render_svg(const PlotDocument& doc);

} // namespace fairaudit::plot
