#include "fairaudit/calibration.hpp"

#include "fairaudit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fairaudit {

std::string_view to_string(RecalSource source)
{
    return source == RecalSource::PlattOnScores ? "platt_on_scores" : "recal_on_logits";
}

double RecalModel::transform(double x) const
{
    return glm::expit(intercept + slope * x);
}

double RecalModel::apply(double prediction) const
{
    if (source == RecalSource::PlattOnScores)
        return transform(prediction);
    const double p = std::clamp(prediction, kLogitClamp, 1.0 - kLogitClamp);
    return transform(glm::logit(p));
}

namespace {

RecalModel from_fit(glm::LogisticFit fit, RecalSource source)
{
    RecalModel model;
    model.intercept = fit.coefficients[0];
    model.slope = fit.coefficients.size() > 1 ? fit.coefficients[1] : 0.0;
    model.source = source;
    model.fit = std::move(fit);
    return model;
}

} // namespace

PlattResult platt_scale(std::span<const double> scores, std::span<const std::uint8_t> labels)
{
    if (scores.size() != labels.size())
        throw ShapeError("scores and labels differ in length");
    if (scores.empty())
        throw EmptyInputError("no scores to calibrate");

    PlattResult result;
    const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
    if (*lo == *hi) {
        Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(scores.size()), 1);
        result.model = from_fit(glm::fit_logistic(ones, labels), RecalSource::PlattOnScores);
        result.warnings.push_back("Platt scaling: scores are constant, fitted intercept only");
    } else {
        result.model = from_fit(glm::fit_logistic(glm::with_intercept(scores), labels),
                                RecalSource::PlattOnScores);
    }
    if (result.model.fit.separation_flag)
        result.warnings.push_back("Platt scaling: quasi-separation detected (coefficient beyond "
                                  + std::to_string(static_cast<int>(glm::kDivergenceBound))
                                  + " on the logit scale)");
    if (!result.model.fit.converged)
        result.warnings.push_back("Platt scaling: logistic fit did not converge");

    result.probabilities.reserve(scores.size());
    for (double s : scores)
        result.probabilities.push_back(result.model.transform(s));
    return result;
}

RecalModel logistic_recalibration(std::span<const double> probabilities,
                                  std::span<const std::uint8_t> labels)
{
    if (probabilities.size() != labels.size())
        throw ShapeError("probabilities and labels differ in length");
    std::vector<double> logits;
    logits.reserve(probabilities.size());
    for (double p : probabilities)
        logits.push_back(glm::logit(std::clamp(p, kLogitClamp, 1.0 - kLogitClamp)));
    return from_fit(glm::fit_logistic(glm::with_intercept(logits), labels),
                    RecalSource::RecalOnLogits);
}

CalibrationCurve calibration_curve(const RecalModel& model, std::span<const double> probabilities,
                                   std::string group, std::size_t grid_size)
{
    if (probabilities.empty())
        throw EmptyGroupError("calibration curve needs at least one prediction");
    if (grid_size < 2)
        throw ConfigError("calibration grid needs at least two points");

    CalibrationCurve curve;
    curve.group = std::move(group);
    const auto [lo, hi] = std::minmax_element(probabilities.begin(), probabilities.end());
    if (*lo == *hi) {
        curve.degenerate = true;
        curve.grid.push_back({*lo, model.apply(*lo)});
        return curve;
    }
    const double step = (*hi - *lo) / static_cast<double>(grid_size - 1);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double x = i + 1 == grid_size ? *hi : *lo + step * static_cast<double>(i);
        curve.grid.push_back({x, model.apply(x)});
    }
    return curve;
}

CalibrationInTheLarge calibration_in_the_large(const ConfusionCounts& counts, std::string group)
{
    if (counts.n() == 0)
        throw EmptyGroupError("calibration-in-the-large needs a non-empty group");
    CalibrationInTheLarge out;
    out.group = std::move(group);
    out.n = counts.n();
    out.observed_rate = wilson_ci(counts.positives(), counts.n());
    out.predicted_positive_rate =
        static_cast<double>(counts.predicted_positive()) / static_cast<double>(counts.n());
    return out;
}

} // namespace fairaudit
