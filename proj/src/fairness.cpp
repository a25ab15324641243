#include "fairaudit/fairness.hpp"

#include "fairaudit/errors.hpp"

#include <algorithm>

namespace fairaudit {

std::string_view to_string(DeltaMode mode)
{
    return mode == DeltaMode::Difference ? "difference" : "ratio";
}

DeltaMode parse_delta_mode(std::string_view text)
{
    if (text == "diff" || text == "difference")
        return DeltaMode::Difference;
    if (text == "ratio")
        return DeltaMode::Ratio;
    throw ConfigError("unknown fairness mode '" + std::string(text) + "' (expected diff or ratio)");
}

namespace {

std::optional<double> delta(const MetricEstimate& group, const MetricEstimate& ref, DeltaMode mode)
{
    if (!group.defined || !ref.defined)
        return std::nullopt;
    if (mode == DeltaMode::Difference)
        return group.value - ref.value;
    if (ref.value == 0.0)
        return std::nullopt;
    return group.value / ref.value;
}

} // namespace

FairnessTable fairness_table(std::span<const GroupMetrics> groups, std::string_view reference,
                             DeltaMode mode)
{
    if (groups.size() < 2)
        throw ConfigError("fairness comparison needs at least two groups");
    auto ref = std::find_if(groups.begin(), groups.end(),
                            [&](const GroupMetrics& g) { return g.group == reference; });
    if (ref == groups.end())
        throw ConfigError("reference group '" + std::string(reference) + "' not present");

    FairnessTable table;
    table.mode = mode;
    table.reference = ref->group;
    table.reference_n = ref->n;
    for (const auto& g : groups) {
        if (&g == &*ref)
            continue;
        FairnessRow row;
        row.group = g.group;
        row.n = g.n;
        row.tpr_delta = delta(g.tpr, ref->tpr, mode);
        row.fpr_delta = delta(g.fpr, ref->fpr, mode);
        row.ber_delta = delta(g.ber, ref->ber, mode);
        table.rows.push_back(std::move(row));
    }
    return table;
}

DisparityBand disparity_band(std::string metric, const MetricEstimate& reference)
{
    DisparityBand band;
    band.metric = std::move(metric);
    if (!reference.defined)
        return band;
    band.defined = true;
    band.low = kBandLow * reference.value;
    band.high = kBandHigh * reference.value;
    band.degenerate = reference.value == 0.0;
    return band;
}

} // namespace fairaudit
