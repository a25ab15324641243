#pragma once

#include "fairaudit/calibration.hpp"
#include "fairaudit/data_model.hpp"
#include "fairaudit/distribution.hpp"
#include "fairaudit/fairness.hpp"
#include "fairaudit/metrics.hpp"
#include "fairaudit/roc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fairaudit {

enum class ThresholdProvenance {
    UserSpecified,
    RocDerived,
    /// Binary predictions: positive means prediction >= 1.
    Fixed,
};

std::string_view to_string(ThresholdProvenance provenance);

struct RocSet {
    RocCurve pooled;
    /// Groups whose ROC could be computed, in GroupAssignment order.
    std::vector<RocCurve> groups;
};

struct GroupRecalibration {
    std::string group;
    RecalModel model;
};

struct CalibrationSet {
    /// Pooled Platt mapping; only for score predictions.
    std::optional<RecalModel> platt;
    std::vector<GroupRecalibration> models;
    std::vector<CalibrationCurve> curves;
};

struct NumberNeededSet {
    std::vector<double> thresholds;
    std::vector<NumberNeededCurve> curves;
};

/// Everything computed for one cohort at one threshold.
struct EvaluationResult {
    PredictionKind kind = PredictionKind::Probability;
    double threshold = 0.0;
    ThresholdProvenance provenance = ThresholdProvenance::RocDerived;
    std::vector<std::string> groups;
    std::string reference;
    std::vector<GroupMetrics> group_metrics;
    /// Absent with a single group.
    std::optional<FairnessTable> fairness;
    /// The next four are absent for binary predictions.
    std::optional<RocSet> roc;
    std::optional<CalibrationSet> calibration;
    std::optional<std::vector<BoxplotStats>> distribution;
    std::optional<NumberNeededSet> number_needed;
    std::vector<CalibrationInTheLarge> calibration_large;
    /// Each distinct warning once, in the order raised.
    std::vector<std::string> warnings;
};

struct EvaluateOptions {
    std::optional<double> threshold;
    DeltaMode mode = DeltaMode::Difference;
};

/// Probability predictions. Without a threshold, uses the Youden point of
/// the pooled ROC curve. Per-group failures drop the affected panel and add
/// a warning; only cohort-level problems throw.
EvaluationResult evaluate_prediction_prob(const Cohort& cohort, const GroupAssignment& groups,
                                          const EvaluateOptions& options = {});

/// Score predictions: thresholds and ROC on raw scores, calibration on
/// pooled Platt-scaled probabilities.
EvaluationResult evaluate_prediction_score(const Cohort& cohort, const GroupAssignment& groups,
                                           const EvaluateOptions& options = {});

/// Binary predictions: group metrics, fairness table and
/// calibration-in-the-large only.
EvaluationResult evaluate_prediction_bin(const Cohort& cohort, const GroupAssignment& groups,
                                         const EvaluateOptions& options = {});

/// Dispatches on the cohort's prediction kind.
EvaluationResult evaluate(const Cohort& cohort, const GroupAssignment& groups,
                          const EvaluateOptions& options = {});

/// Markdown fairness table (3 decimals, reference row first) followed by
/// metric definitions.
std::string summary_table(const EvaluationResult& result, DeltaMode mode = DeltaMode::Difference);

/// Presentation rounding used by the summary table: 3 decimals, no "-0.000".
std::string format_delta(std::optional<double> value);

} // namespace fairaudit
