#pragma once

#include "fairaudit/metrics.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fairaudit {

enum class DeltaMode { Difference, Ratio };

std::string_view to_string(DeltaMode mode);
/// Accepts "diff"/"difference" and "ratio".
DeltaMode parse_delta_mode(std::string_view text);

struct FairnessRow {
    std::string group;
    std::size_t n = 0;
    /// Empty when either side is undefined, or the reference is 0 in ratio mode.
    std::optional<double> tpr_delta;
    std::optional<double> fpr_delta;
    std::optional<double> ber_delta;
};

/// Equal opportunity (TPR), equalized odds (TPR and FPR) and BER equality
/// against one reference group.
struct FairnessTable {
    DeltaMode mode = DeltaMode::Difference;
    std::string reference;
    std::size_t reference_n = 0;
    /// Non-reference groups, in input order.
    std::vector<FairnessRow> rows;
};

/// Throws ConfigError with fewer than two groups or an unknown reference.
FairnessTable fairness_table(std::span<const GroupMetrics> groups, std::string_view reference,
                             DeltaMode mode = DeltaMode::Difference);

/// Guidance band [0.8 x ref, 1.25 x ref] around a reference metric level.
struct DisparityBand {
    std::string metric;
    double low = 0.0;
    double high = 0.0;
    bool defined = false;
    /// Reference value is 0, so the band collapses to a point.
    bool degenerate = false;
};

inline constexpr double kBandLow = 0.8;
inline constexpr double kBandHigh = 1.25;

DisparityBand disparity_band(std::string metric, const MetricEstimate& reference);

} // namespace fairaudit
