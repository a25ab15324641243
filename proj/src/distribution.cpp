#include "fairaudit/distribution.hpp"

#include "fairaudit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairaudit {

double sorted_quantile(std::span<const double> sorted, double p)
{
    if (sorted.empty())
        throw EmptyGroupError("quantile of empty data");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BoxplotStats boxplot(std::vector<double> values, std::string group, int label)
{
    BoxplotStats box;
    box.group = std::move(group);
    box.label = label;
    box.n = values.size();
    if (values.empty())
        return box;

    std::sort(values.begin(), values.end());
    const double q1 = sorted_quantile(values, 0.25);
    const double q3 = sorted_quantile(values, 0.75);
    box.q1 = q1;
    box.median = sorted_quantile(values, 0.5);
    box.q3 = q3;

    const double iqr = q3 - q1;
    const double lower_fence = q1 - 1.5 * iqr;
    const double upper_fence = q3 + 1.5 * iqr;
    // Interpolated quartiles need not be data points, so start from the extremes.
    double low = std::numeric_limits<double>::infinity();
    double high = -std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (v < lower_fence || v > upper_fence)
            box.outliers.push_back(v);
        else {
            low = std::min(low, v);
            high = std::max(high, v);
        }
    }
    box.whisker_low = low;
    box.whisker_high = high;
    return box;
}

std::vector<BoxplotStats> boxplot_stats(std::span<const double> predictions,
                                        std::span<const std::uint8_t> labels,
                                        const GroupAssignment& groups)
{
    if (predictions.size() != labels.size() || groups.membership.size() != labels.size())
        throw ShapeError("predictions, labels and groups differ in length");

    std::vector<std::vector<double>> cells(groups.group_count() * 2);
    for (std::size_t i = 0; i < predictions.size(); ++i)
        cells[groups.membership[i] * 2 + labels[i]].push_back(predictions[i]);

    std::vector<BoxplotStats> out;
    for (std::size_t g = 0; g < groups.group_count(); ++g)
        for (int label = 0; label < 2; ++label)
            out.push_back(boxplot(std::move(cells[g * 2 + label]), groups.groups[g], label));
    return out;
}

std::vector<NumberNeededCurve> number_needed_curve(std::span<const double> predictions,
                                                   std::span<const std::uint8_t> labels,
                                                   const GroupAssignment& groups,
                                                   std::span<const double> threshold_grid)
{
    if (threshold_grid.empty())
        throw ConfigError("threshold grid is empty");
    if (!std::is_sorted(threshold_grid.begin(), threshold_grid.end()))
        throw ConfigError("threshold grid must be ascending");
    if (predictions.size() != labels.size() || groups.membership.size() != labels.size())
        throw ShapeError("predictions, labels and groups differ in length");

    std::vector<NumberNeededCurve> curves(groups.group_count());
    for (std::size_t g = 0; g < curves.size(); ++g)
        curves[g].group = groups.groups[g];

    std::vector<ConfusionCounts> counts(groups.group_count());
    for (double t : threshold_grid) {
        std::fill(counts.begin(), counts.end(), ConfusionCounts{});
        for (std::size_t i = 0; i < predictions.size(); ++i) {
            auto& c = counts[groups.membership[i]];
            const bool positive = predictions[i] >= t;
            if (positive)
                (labels[i] ? c.tp : c.fp) += 1;
            else
                (labels[i] ? c.fn : c.tn) += 1;
        }
        for (std::size_t g = 0; g < curves.size(); ++g) {
            NumberNeededPoint pt;
            pt.threshold = t;
            if (auto nn = number_needed_positive(counts[g]); nn.defined)
                pt.nntp = nn.value;
            if (auto nn = number_needed_negative(counts[g]); nn.defined)
                pt.nntn = nn.value;
            curves[g].points.push_back(pt);
        }
    }
    return curves;
}

std::vector<double> default_threshold_grid(std::span<const double> predictions,
                                           double active_threshold)
{
    std::vector<double> sorted(predictions.begin(), predictions.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> grid;
    for (int d = 1; d <= 9; ++d)
        grid.push_back(sorted_quantile(sorted, d / 10.0));
    grid.push_back(active_threshold);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

} // namespace fairaudit
