#include "fairaudit/metrics.hpp"

#include "fairaudit/errors.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>

namespace fairaudit {

std::vector<std::uint8_t> classify(std::span<const double> predictions, PredictionKind kind,
                                   double threshold)
{
    std::vector<std::uint8_t> out(predictions.size());
    if (kind == PredictionKind::Binary) {
        std::transform(predictions.begin(), predictions.end(), out.begin(),
                       [](double v) { return static_cast<std::uint8_t>(v != 0.0); });
        return out;
    }
    std::transform(predictions.begin(), predictions.end(), out.begin(),
                   [threshold](double v) { return static_cast<std::uint8_t>(v >= threshold); });
    return out;
}

namespace {

void tally(ConfusionCounts& c, std::uint8_t predicted, std::uint8_t label)
{
    if (predicted) {
        if (label)
            ++c.tp;
        else
            ++c.fp;
    } else {
        if (label)
            ++c.fn;
        else
            ++c.tn;
    }
}

double z_for(double level)
{
    if (level == 0.95)
        return kZ95;
    if (!(level > 0.0 && level < 1.0))
        throw ConfigError("confidence level must lie in (0, 1)");
    boost::math::normal standard;
    return boost::math::quantile(standard, 0.5 + level / 2.0);
}

MetricEstimate ratio_estimate(std::size_t num, std::size_t den)
{
    return wilson_ci(num, den);
}

MetricEstimate reciprocal(const MetricEstimate& rate, std::size_t num, std::size_t den)
{
    if (!rate.defined || num == 0)
        return MetricEstimate::undefined();
    MetricEstimate out;
    out.defined = true;
    out.has_interval = true;
    out.value = static_cast<double>(den) / static_cast<double>(num);
    out.ci_low = 1.0 / rate.ci_high;
    out.ci_high = 1.0 / rate.ci_low;
    out.ci_low = std::min(out.ci_low, out.value);
    out.ci_high = std::max(out.ci_high, out.value);
    return out;
}

} // namespace

ConfusionCounts confusion_counts(std::span<const std::uint8_t> predicted,
                                 std::span<const std::uint8_t> labels)
{
    if (predicted.size() != labels.size())
        throw ShapeError("predictions and labels differ in length");
    ConfusionCounts c;
    for (std::size_t i = 0; i < labels.size(); ++i)
        tally(c, predicted[i], labels[i]);
    return c;
}

ConfusionCounts confusion_counts(std::span<const std::uint8_t> predicted,
                                 std::span<const std::uint8_t> labels,
                                 std::span<const std::uint8_t> mask)
{
    if (predicted.size() != labels.size() || mask.size() != labels.size())
        throw ShapeError("predictions, labels and mask differ in length");
    ConfusionCounts c;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (mask[i])
            tally(c, predicted[i], labels[i]);
    if (c.n() == 0)
        throw EmptyGroupError("group selects no records");
    return c;
}

MetricEstimate wilson_ci(std::size_t successes, std::size_t trials, double level)
{
    if (trials == 0)
        return MetricEstimate::undefined();
    if (successes > trials)
        throw ValidationError("successes exceed trials");

    const double z = z_for(level);
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));

    MetricEstimate out;
    out.defined = true;
    out.has_interval = true;
    out.value = p;
    out.ci_low = successes == 0 ? 0.0 : std::clamp(center - half, 0.0, p);
    out.ci_high = successes == trials ? 1.0 : std::clamp(center + half, p, 1.0);
    return out;
}

MetricEstimate number_needed_positive(const ConfusionCounts& c)
{
    return reciprocal(ratio_estimate(c.tp, c.predicted_positive()), c.tp, c.predicted_positive());
}

MetricEstimate number_needed_negative(const ConfusionCounts& c)
{
    return reciprocal(ratio_estimate(c.tn, c.predicted_negative()), c.tn, c.predicted_negative());
}

GroupMetrics performance_metrics(const ConfusionCounts& c, std::string group)
{
    GroupMetrics m;
    m.group = std::move(group);
    m.n = c.n();
    m.counts = c;
    m.accuracy = ratio_estimate(c.tp + c.tn, c.n());
    m.tpr = ratio_estimate(c.tp, c.positives());
    m.fpr = ratio_estimate(c.fp, c.negatives());
    m.ppv = ratio_estimate(c.tp, c.predicted_positive());
    m.npv = ratio_estimate(c.tn, c.predicted_negative());

    if (m.tpr.defined && m.fpr.defined) {
        const double fnr = 1.0 - m.tpr.value;
        m.ber.defined = true;
        m.ber.has_interval = true;
        m.ber.value = (m.fpr.value + fnr) / 2.0;
        const double var = (m.tpr.value * fnr / static_cast<double>(c.positives())
                            + m.fpr.value * (1.0 - m.fpr.value) / static_cast<double>(c.negatives()))
                           / 4.0;
        const double half = kZ95 * std::sqrt(var);
        m.ber.ci_low = std::clamp(m.ber.value - half, 0.0, m.ber.value);
        m.ber.ci_high = std::clamp(m.ber.value + half, m.ber.value, 1.0);
    }

    m.nntp = reciprocal(m.ppv, c.tp, c.predicted_positive());
    m.nntn = reciprocal(m.npv, c.tn, c.predicted_negative());
    return m;
}

} // namespace fairaudit
