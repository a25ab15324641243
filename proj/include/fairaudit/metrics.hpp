#pragma once

#include "fairaudit/data_model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fairaudit {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959964;

struct ConfusionCounts {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t n() const noexcept { return tp + fp + tn + fn; }
    std::size_t positives() const noexcept { return tp + fn; }
    std::size_t negatives() const noexcept { return fp + tn; }
    std::size_t predicted_positive() const noexcept { return tp + fp; }
    std::size_t predicted_negative() const noexcept { return tn + fn; }

    bool operator==(const ConfusionCounts&) const = default;
};

/// A point value with interval bounds. Undefined estimates (zero
/// denominator) carry no value and no interval. A defined estimate without
/// an interval has both bounds equal to the value.
struct MetricEstimate {
    double value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool defined = false;
    bool has_interval = false;

    static MetricEstimate undefined() { return {}; }
    static MetricEstimate point(double v) { return {v, v, v, true, false}; }
};

struct GroupMetrics {
    std::string group;
    std::size_t n = 0;
    ConfusionCounts counts;
    MetricEstimate accuracy;
    MetricEstimate tpr;
    MetricEstimate fpr;
    MetricEstimate ppv;
    MetricEstimate npv;
    MetricEstimate ber;
    MetricEstimate nntp;
    MetricEstimate nntn;
};

/// 1 where prediction >= threshold. Binary predictions pass through.
std::vector<std::uint8_t> classify(std::span<const double> predictions, PredictionKind kind,
                                   double threshold);

ConfusionCounts confusion_counts(std::span<const std::uint8_t> predicted,
                                 std::span<const std::uint8_t> labels);

/// Counts restricted to records where `mask` is nonzero. Throws
/// EmptyGroupError when the mask selects nothing.
ConfusionCounts confusion_counts(std::span<const std::uint8_t> predicted,
                                 std::span<const std::uint8_t> labels,
                                 std::span<const std::uint8_t> mask);

/// Wilson score interval, bounds clamped to [0, 1]. Zero trials gives an
/// undefined estimate.
MetricEstimate wilson_ci(std::size_t successes, std::size_t trials, double level = 0.95);

/// Accuracy, TPR, FPR, PPV, NPV with Wilson intervals; BER with a normal
/// interval from the two independent rates; NNTP/NNTN as reciprocals of
/// PPV/NPV with the reciprocal interval.
GroupMetrics performance_metrics(const ConfusionCounts& counts, std::string group = {});

/// (tp + fp) / tp, undefined when tp == 0.
MetricEstimate number_needed_positive(const ConfusionCounts& counts);
/// (tn + fn) / tn, undefined when tn == 0.
MetricEstimate number_needed_negative(const ConfusionCounts& counts);

} // namespace fairaudit
