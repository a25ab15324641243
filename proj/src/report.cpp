#include "fairaudit/report.hpp"

#include "fairaudit/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace fairaudit {

std::string_view to_string(ThresholdProvenance provenance)
{
    switch (provenance) {
    case ThresholdProvenance::UserSpecified: return "user_specified";
    case ThresholdProvenance::RocDerived: return "roc_derived";
    case ThresholdProvenance::Fixed: return "fixed";
    }
    return "unknown";
}

namespace {

class WarningLog {
public:
    void add(std::string message)
    {
        if (std::find(messages_.begin(), messages_.end(), message) == messages_.end())
            messages_.push_back(std::move(message));
    }
    void add_all(const std::vector<std::string>& messages)
    {
        for (const auto& m : messages)
            add(m);
    }
    std::vector<std::string> take() { return std::move(messages_); }

private:
    std::vector<std::string> messages_;
};

struct GroupSlices {
    std::vector<std::vector<double>> predictions;
    std::vector<std::vector<std::uint8_t>> labels;
};

GroupSlices slice(std::span<const double> predictions, std::span<const std::uint8_t> labels,
                  const GroupAssignment& groups)
{
    GroupSlices s;
    s.predictions.resize(groups.group_count());
    s.labels.resize(groups.group_count());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        s.predictions[groups.membership[i]].push_back(predictions[i]);
        s.labels[groups.membership[i]].push_back(labels[i]);
    }
    return s;
}

void check_inputs(const Cohort& cohort, const GroupAssignment& groups, PredictionKind expected)
{
    if (cohort.kind() != expected)
        throw ConfigError("expected " + std::string(to_string(expected)) + " predictions, cohort holds "
                          + std::string(to_string(cohort.kind())));
    if (groups.membership.size() != cohort.size())
        throw ShapeError("group assignment covers " + std::to_string(groups.membership.size())
                         + " records, cohort has " + std::to_string(cohort.size()));
}

/// Shared classification-based part: metrics, fairness table, CITL.
void classification_panels(const Cohort& cohort, const GroupAssignment& groups,
                           const EvaluateOptions& options, EvaluationResult& result,
                           WarningLog& warnings)
{
    result.groups = groups.groups;
    result.reference = groups.reference;
    const auto predicted = classify(cohort.predictions(), cohort.kind(), result.threshold);
    for (std::size_t g = 0; g < groups.group_count(); ++g) {
        const auto mask = groups.mask(g);
        const auto counts = confusion_counts(predicted, cohort.labels(), mask);
        auto metrics = performance_metrics(counts, groups.groups[g]);
        for (auto [name, est] : {std::pair{"TPR", &metrics.tpr}, std::pair{"FPR", &metrics.fpr},
                                 std::pair{"PPV", &metrics.ppv}, std::pair{"NPV", &metrics.npv}})
            if (!est->defined)
                warnings.add(fmt::format("{} undefined for group '{}' (zero denominator)", name,
                                         groups.groups[g]));
        result.calibration_large.push_back(calibration_in_the_large(counts, groups.groups[g]));
        result.group_metrics.push_back(std::move(metrics));
    }

    if (groups.group_count() < 2) {
        warnings.add("only one group present; fairness table is empty");
    } else {
        result.fairness = fairness_table(result.group_metrics, groups.reference, options.mode);
    }
}

RocSet roc_panels(const Cohort& cohort, const GroupSlices& slices, const GroupAssignment& groups,
                  WarningLog& warnings)
{
    RocSet set;
    set.pooled = roc_curve(cohort.predictions(), cohort.labels());
    set.pooled.group = "pooled";
    set.pooled.auc = auc_ci_delong(cohort.predictions(), cohort.labels());
    for (std::size_t g = 0; g < groups.group_count(); ++g) {
        try {
            auto curve = roc_curve(slices.predictions[g], slices.labels[g]);
            curve.group = groups.groups[g];
            curve.auc = auc_ci_delong(slices.predictions[g], slices.labels[g]);
            if (!curve.auc.has_interval)
                warnings.add(fmt::format("AUC interval unavailable for group '{}' (fewer than 2 per class)",
                                         groups.groups[g]));
            set.groups.push_back(std::move(curve));
        } catch (const Error& e) {
            warnings.add(fmt::format("ROC curve omitted for group '{}': {}", groups.groups[g], e.what()));
        }
    }
    return set;
}

CalibrationSet calibration_panels(std::span<const double> probabilities, const GroupAssignment& groups,
                                  std::span<const std::uint8_t> labels, WarningLog& warnings)
{
    CalibrationSet set;
    const auto slices = slice(probabilities, labels, groups);
    for (std::size_t g = 0; g < groups.group_count(); ++g) {
        const auto& name = groups.groups[g];
        try {
            auto model = logistic_recalibration(slices.predictions[g], slices.labels[g]);
            if (model.fit.separation_flag)
                warnings.add(fmt::format("recalibration for group '{}' shows quasi-separation", name));
            if (!model.fit.converged)
                warnings.add(fmt::format("recalibration for group '{}' did not converge", name));
            auto curve = calibration_curve(model, slices.predictions[g], name);
            if (curve.degenerate)
                warnings.add(fmt::format("calibration curve for group '{}' is a single point", name));
            set.models.push_back({name, std::move(model)});
            set.curves.push_back(std::move(curve));
        } catch (const Error& e) {
            warnings.add(fmt::format("calibration curve omitted for group '{}': {}", name, e.what()));
        }
    }
    return set;
}

EvaluationResult evaluate_continuous(const Cohort& cohort, const GroupAssignment& groups,
                                     const EvaluateOptions& options)
{
    WarningLog warnings;
    warnings.add_all(groups.warnings);
    EvaluationResult result;
    result.kind = cohort.kind();

    if (options.threshold) {
        if (!std::isfinite(*options.threshold))
            throw ConfigError("threshold must be finite");
        result.threshold = *options.threshold;
        result.provenance = ThresholdProvenance::UserSpecified;
    } else {
        if (!cohort.has_both_classes())
            throw DegenerateLabelsError("cannot derive a threshold from ROC analysis: labels hold one class");
        result.threshold = youden_threshold(roc_curve(cohort.predictions(), cohort.labels()));
        result.provenance = ThresholdProvenance::RocDerived;
    }

    classification_panels(cohort, groups, options, result, warnings);
    const auto slices = slice(cohort.predictions(), cohort.labels(), groups);

    if (cohort.has_both_classes()) {
        result.roc = roc_panels(cohort, slices, groups, warnings);

        std::vector<double> probabilities(cohort.predictions().begin(), cohort.predictions().end());
        std::optional<RecalModel> platt;
        if (cohort.kind() == PredictionKind::Score) {
            try {
                auto scaled = platt_scale(cohort.predictions(), cohort.labels());
                warnings.add_all(scaled.warnings);
                probabilities = std::move(scaled.probabilities);
                platt = std::move(scaled.model);
            } catch (const Error& e) {
                warnings.add(fmt::format("Platt scaling failed: {}", e.what()));
            }
        }
        if (cohort.kind() == PredictionKind::Probability || platt) {
            result.calibration = calibration_panels(probabilities, groups, cohort.labels(), warnings);
            result.calibration->platt = std::move(platt);
        }
    } else {
        warnings.add("labels hold one class; ROC and calibration curves omitted");
    }

    result.distribution = boxplot_stats(cohort.predictions(), cohort.labels(), groups);

    NumberNeededSet nn;
    nn.thresholds = default_threshold_grid(cohort.predictions(), result.threshold);
    nn.curves = number_needed_curve(cohort.predictions(), cohort.labels(), groups, nn.thresholds);
    result.number_needed = std::move(nn);

    result.warnings = warnings.take();
    return result;
}

} // namespace

EvaluationResult evaluate_prediction_prob(const Cohort& cohort, const GroupAssignment& groups,
                                          const EvaluateOptions& options)
{
    check_inputs(cohort, groups, PredictionKind::Probability);
    return evaluate_continuous(cohort, groups, options);
}

EvaluationResult evaluate_prediction_score(const Cohort& cohort, const GroupAssignment& groups,
                                           const EvaluateOptions& options)
{
    check_inputs(cohort, groups, PredictionKind::Score);
    return evaluate_continuous(cohort, groups, options);
}

EvaluationResult evaluate_prediction_bin(const Cohort& cohort, const GroupAssignment& groups,
                                         const EvaluateOptions& options)
{
    check_inputs(cohort, groups, PredictionKind::Binary);
    WarningLog warnings;
    warnings.add_all(groups.warnings);
    if (options.threshold)
        warnings.add("threshold ignored for binary predictions");

    EvaluationResult result;
    result.kind = PredictionKind::Binary;
    result.threshold = 1.0;
    result.provenance = ThresholdProvenance::Fixed;
    classification_panels(cohort, groups, options, result, warnings);
    result.warnings = warnings.take();
    return result;
}

EvaluationResult evaluate(const Cohort& cohort, const GroupAssignment& groups,
                          const EvaluateOptions& options)
{
    switch (cohort.kind()) {
    case PredictionKind::Probability: return evaluate_prediction_prob(cohort, groups, options);
    case PredictionKind::Score: return evaluate_prediction_score(cohort, groups, options);
    case PredictionKind::Binary: return evaluate_prediction_bin(cohort, groups, options);
    }
    throw ConfigError("unknown prediction kind");
}

std::string format_delta(std::optional<double> value)
{
    if (!value || !std::isfinite(*value))
        return "NA";
    std::string text = fmt::format("{:.3f}", *value);
    if (text == "-0.000")
        text = "0.000";
    return text;
}

namespace {

std::string thousands(std::size_t n)
{
    std::string digits = std::to_string(n);
    std::string out;
    const std::size_t lead = digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (i - lead) % 3 == 0)
            out.push_back(',');
        out.push_back(digits[i]);
    }
    return out;
}

} // namespace

std::string summary_table(const EvaluationResult& result, DeltaMode mode)
{
    const std::string unit = mode == DeltaMode::Difference ? "difference" : "ratio";
    std::string out;
    out += fmt::format("| Group | Sample size | TPR {0} | FPR {0} | BER {0} |\n", unit);
    out += "|---|---|---|---|---|\n";

    std::size_t ref_n = 0;
    for (const auto& g : result.group_metrics)
        if (g.group == result.reference)
            ref_n = g.n;
    out += fmt::format("| {} | {} | Reference | Reference | Reference |\n", result.reference,
                       thousands(ref_n));

    if (result.group_metrics.size() >= 2) {
        const auto table = fairness_table(result.group_metrics, result.reference, mode);
        for (const auto& row : table.rows)
            out += fmt::format("| {} | {} | {} | {} | {} |\n", row.group, thousands(row.n),
                               format_delta(row.tpr_delta), format_delta(row.fpr_delta),
                               format_delta(row.ber_delta));
    }

    const std::string how = mode == DeltaMode::Difference ? "difference from" : "ratio to";
    out += "\n";
    out += fmt::format("Threshold: {} ({}).\n\n", fmt::format("{:.6g}", result.threshold),
                       to_string(result.provenance));
    out += fmt::format("- Equal opportunity: TPR = TP / (TP + FN); reported as the {} the reference group.\n", how);
    out += fmt::format("- Equalized odds: TPR and FPR = FP / (FP + TN); both reported as the {} the reference group.\n", how);
    out += fmt::format("- BER equality: BER = (FPR + FNR) / 2 with FNR = 1 - TPR; reported as the {} the reference group.\n", how);
    out += "- NA marks a value with a zero denominator.\n";
    return out;
}

} // namespace fairaudit
