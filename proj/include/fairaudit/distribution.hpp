#pragma once

#include "fairaudit/data_model.hpp"
#include "fairaudit/metrics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fairaudit {

/// Tukey boxplot summary of one group x label cell. Quartiles use linear
/// interpolation between order statistics at position (n - 1) p.
struct BoxplotStats {
    std::string group;
    int label = 0;
    std::size_t n = 0;
    /// Unset for an empty cell.
    std::optional<double> q1, median, q3, whisker_low, whisker_high;
    std::vector<double> outliers;
};

/// Linear-interpolation quantile of already sorted data.
double sorted_quantile(std::span<const double> sorted, double p);

BoxplotStats boxplot(std::vector<double> values, std::string group, int label);

/// One entry per group (GroupAssignment order) and label (0 then 1).
std::vector<BoxplotStats> boxplot_stats(std::span<const double> predictions,
                                        std::span<const std::uint8_t> labels,
                                        const GroupAssignment& groups);

struct NumberNeededPoint {
    double threshold = 0.0;
    /// Unset where tp (tn) is zero; plotted as a gap.
    std::optional<double> nntp;
    std::optional<double> nntn;
};

struct NumberNeededCurve {
    std::string group;
    std::vector<NumberNeededPoint> points;
};

/// Requires a non-empty ascending grid; throws ConfigError otherwise.
std::vector<NumberNeededCurve> number_needed_curve(std::span<const double> predictions,
                                                   std::span<const std::uint8_t> labels,
                                                   const GroupAssignment& groups,
                                                   std::span<const double> threshold_grid);

/// Pooled 10%..90% deciles plus the active threshold, sorted, duplicates removed.
std::vector<double> default_threshold_grid(std::span<const double> predictions,
                                           double active_threshold);

} // namespace fairaudit
