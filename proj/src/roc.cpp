#include "fairaudit/roc.hpp"

#include "fairaudit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fairaudit {

namespace {

struct ClassSizes {
    std::size_t positives = 0;
    std::size_t negatives = 0;
};

ClassSizes class_sizes(std::span<const double> predictions, std::span<const std::uint8_t> labels)
{
    if (predictions.size() != labels.size())
        throw ShapeError("predictions and labels differ in length");
    ClassSizes s;
    for (auto y : labels)
        (y ? s.positives : s.negatives) += 1;
    if (s.positives == 0 || s.negatives == 0)
        throw DegenerateLabelsError("ROC analysis needs both label classes");
    return s;
}

/// Midranks (1-based, ties averaged) of `values`.
std::vector<double> midranks(std::span<const double> values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]])
            ++j;
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k)
            ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

} // namespace

RocCurve roc_curve(std::span<const double> predictions, std::span<const std::uint8_t> labels)
{
    const ClassSizes sizes = class_sizes(predictions, labels);
    std::vector<std::size_t> order(predictions.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return predictions[a] > predictions[b]; });

    RocCurve curve;
    curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double value = predictions[order[i]];
        while (i < order.size() && predictions[order[i]] == value) {
            (labels[order[i]] ? tp : fp) += 1;
            ++i;
        }
        curve.points.push_back({value, static_cast<double>(fp) / static_cast<double>(sizes.negatives),
                                static_cast<double>(tp) / static_cast<double>(sizes.positives)});
    }
    curve.auc = MetricEstimate::point(trapezoid_area(curve));
    return curve;
}

double trapezoid_area(const RocCurve& curve)
{
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& a = curve.points[i - 1];
        const auto& b = curve.points[i];
        area += (b.fpr - a.fpr) * (b.tpr + a.tpr) / 2.0;
    }
    return area;
}

double auc_mann_whitney(std::span<const double> predictions, std::span<const std::uint8_t> labels)
{
    const ClassSizes sizes = class_sizes(predictions, labels);
    const auto ranks = midranks(predictions);
    double rank_sum = 0.0;
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (labels[i])
            rank_sum += ranks[i];
    const double p = static_cast<double>(sizes.positives);
    const double n = static_cast<double>(sizes.negatives);
    return (rank_sum - p * (p + 1.0) / 2.0) / (p * n);
}

std::optional<double> delong_variance(std::span<const double> predictions,
                                      std::span<const std::uint8_t> labels)
{
    const ClassSizes sizes = class_sizes(predictions, labels);
    if (sizes.positives < 2 || sizes.negatives < 2)
        return std::nullopt;

    std::vector<double> pos;
    std::vector<double> neg;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        (labels[i] ? pos : neg).push_back(predictions[i]);

    const auto all_ranks = midranks(predictions);
    const auto pos_ranks = midranks(pos);
    const auto neg_ranks = midranks(neg);
    const double m = static_cast<double>(pos.size());
    const double n = static_cast<double>(neg.size());

    // Structural components: placement of each positive among negatives and
    // of each negative among positives.
    std::vector<double> v10;
    std::vector<double> v01;
    std::size_t ip = 0;
    std::size_t in = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (labels[i])
            v10.push_back((all_ranks[i] - pos_ranks[ip++]) / n);
        else
            v01.push_back(1.0 - (all_ranks[i] - neg_ranks[in++]) / m);
    }

    auto sample_variance = [](const std::vector<double>& v) {
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v)
            ss += (x - mean) * (x - mean);
        return ss / static_cast<double>(v.size() - 1);
    };
    return sample_variance(v10) / m + sample_variance(v01) / n;
}

MetricEstimate auc_ci_delong(std::span<const double> predictions, std::span<const std::uint8_t> labels)
{
    const double auc = auc_mann_whitney(predictions, labels);
    const auto variance = delong_variance(predictions, labels);
    if (!variance)
        return MetricEstimate::point(auc);
    const double half = kZ95 * std::sqrt(std::max(*variance, 0.0));
    MetricEstimate out;
    out.defined = true;
    out.has_interval = true;
    out.value = auc;
    out.ci_low = std::clamp(auc - half, 0.0, auc);
    out.ci_high = std::clamp(auc + half, auc, 1.0);
    return out;
}

double youden_threshold(const RocCurve& curve)
{
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& pt : curve.points)
        if (std::isfinite(pt.threshold))
            best = std::max(best, pt.tpr - pt.fpr);
    if (!std::isfinite(best))
        throw ConfigError("ROC curve has no finite thresholds");

    // Points are in descending threshold order, so the last near-maximal
    // point carries the smallest threshold.
    double chosen = 0.0;
    for (const auto& pt : curve.points)
        if (std::isfinite(pt.threshold) && pt.tpr - pt.fpr >= best - 1e-12)
            chosen = pt.threshold;
    return chosen;
}

} // namespace fairaudit
