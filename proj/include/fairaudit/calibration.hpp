#pragma once

#include "fairaudit/glm.hpp"
#include "fairaudit/metrics.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fairaudit {

/// Probabilities are clamped to [eps, 1 - eps] before taking logits.
inline constexpr double kLogitClamp = 1e-6;
inline constexpr std::size_t kCalibrationGridSize = 100;

enum class RecalSource { PlattOnScores, RecalOnLogits };

std::string_view to_string(RecalSource source);

/// observed = expit(intercept + slope * x), with x the raw score (Platt) or
/// the logit of the clamped probability (recalibration).
struct RecalModel {
    double intercept = 0.0;
    double slope = 0.0;
    RecalSource source = RecalSource::RecalOnLogits;
    glm::LogisticFit fit;

    double transform(double x) const;
    /// Maps a prediction on the model's input scale to a probability.
    double apply(double prediction) const;
};

struct PlattResult {
    RecalModel model;
    std::vector<double> probabilities;
    std::vector<std::string> warnings;
};

/// Logistic fit of labels on (1, score). Constant scores fall back to an
/// intercept-only fit with slope 0.
PlattResult platt_scale(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Logistic fit of labels on (1, logit p). Throws RankDeficiencyError when
/// all clamped logits coincide.
RecalModel logistic_recalibration(std::span<const double> probabilities,
                                  std::span<const std::uint8_t> labels);

struct CalibrationPoint {
    double predicted = 0.0;
    double observed = 0.0;
};

struct CalibrationCurve {
    std::string group;
    std::vector<CalibrationPoint> grid;
    /// Group predictions span a single value; the curve is one point.
    bool degenerate = false;
};

/// Evenly spaced grid over [min, max] of the group's probabilities, mapped
/// through the recalibration model.
CalibrationCurve calibration_curve(const RecalModel& model, std::span<const double> probabilities,
                                   std::string group = {},
                                   std::size_t grid_size = kCalibrationGridSize);

struct CalibrationInTheLarge {
    std::string group;
    /// Observed positive proportion with a Wilson interval.
    MetricEstimate observed_rate;
    /// Fraction classified positive at the active threshold.
    double predicted_positive_rate = 0.0;
    std::size_t n = 0;
};

CalibrationInTheLarge calibration_in_the_large(const ConfusionCounts& counts, std::string group = {});

} // namespace fairaudit
