#pragma once

#include "fairaudit/metrics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fairaudit {

struct RocPoint {
    /// Records with prediction >= threshold are classified positive. The
    /// leading (0, 0) anchor has threshold +infinity.
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocCurve {
    std::string group;
    /// (0, 0) anchor, then one point per distinct prediction in descending
    /// order; the last point is (1, 1).
    std::vector<RocPoint> points;
    MetricEstimate auc;
};

/// Throws DegenerateLabelsError unless both classes are present. The AUC
/// estimate is filled with the trapezoid area and no interval.
RocCurve roc_curve(std::span<const double> predictions, std::span<const std::uint8_t> labels);

double trapezoid_area(const RocCurve& curve);

/// (concordant + 0.5 tied) / (positives x negatives), via midranks.
double auc_mann_whitney(std::span<const double> predictions, std::span<const std::uint8_t> labels);

/// DeLong structural-component variance of the Mann-Whitney AUC.
/// Requires at least two records per class; returns nullopt otherwise.
std::optional<double> delong_variance(std::span<const double> predictions,
                                      std::span<const std::uint8_t> labels);

/// AUC with a normal 95% interval from the DeLong variance, clamped to
/// [0, 1]. With fewer than two records in either class the point estimate
/// is kept without an interval.
MetricEstimate auc_ci_delong(std::span<const double> predictions, std::span<const std::uint8_t> labels);

/// Threshold maximizing TPR - FPR over the curve's finite thresholds. Ties
/// go to the smaller threshold.
double youden_threshold(const RocCurve& curve);

} // namespace fairaudit
