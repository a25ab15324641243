#include "fairaudit/data_model.hpp"

#include "fairaudit/csv.hpp"
#include "fairaudit/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

namespace fairaudit {

std::string_view to_string(PredictionKind kind)
{
    switch (kind) {
    case PredictionKind::Probability: return "probability";
    case PredictionKind::Score: return "score";
    case PredictionKind::Binary: return "binary";
    }
    return "unknown";
}

namespace {

void validate_prediction(double value, PredictionKind kind, std::size_t row)
{
    if (!std::isfinite(value))
        throw ValidationError("prediction is not finite", row);
    switch (kind) {
    case PredictionKind::Probability:
        if (value < 0.0 || value > 1.0)
            throw ValidationError("probability outside [0, 1]: " + std::to_string(value), row);
        break;
    case PredictionKind::Binary:
        if (value != 0.0 && value != 1.0)
            throw ValidationError("binary prediction not in {0, 1}: " + std::to_string(value), row);
        break;
    case PredictionKind::Score:
        break;
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text, std::size_t row)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
        throw ValidationError("non-numeric prediction '" + std::string(text) + "'", row);
    return value;
}

std::size_t column_index(const csv::Record& header, const std::string& name)
{
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw ConfigError("column '" + name + "' not found in input header");
    return static_cast<std::size_t>(it - header.begin());
}

} // namespace

Cohort::Cohort(std::vector<double> predictions, std::vector<std::uint8_t> labels,
               PredictionKind kind)
    : predictions_(std::move(predictions)), labels_(std::move(labels)), kind_(kind)
{
    if (predictions_.size() != labels_.size())
        throw ShapeError("predictions and labels differ in length");
    if (labels_.empty())
        throw EmptyInputError("cohort has no records");
    for (std::size_t i = 0; i < predictions_.size(); ++i) {
        validate_prediction(predictions_[i], kind_, i + 1);
        if (labels_[i] > 1)
            throw ValidationError("label must be 0 or 1", i + 1);
        positives_ += labels_[i];
    }
}

ParsedCohort parse_cohort(std::istream& source, const ColumnSpec& spec,
                          std::string_view positive_label, PredictionKind kind)
{
    csv::Reader reader(source);
    auto header = reader.next();
    if (!header)
        throw EmptyInputError("input has no header row");
    if (!header->empty() && header->front().starts_with("\xEF\xBB\xBF"))
        header->front().erase(0, 3);

    const std::size_t pred_col = column_index(*header, spec.prediction);
    const std::size_t label_col = column_index(*header, spec.label);
    std::vector<std::size_t> group_cols;
    for (const auto& name : spec.groups)
        group_cols.push_back(column_index(*header, name));

    std::vector<double> predictions;
    std::vector<std::uint8_t> labels;
    std::vector<std::vector<std::string>> attributes(group_cols.size());
    std::size_t rejected = 0;
    std::size_t row = 0;

    while (auto record = reader.next()) {
        ++row;
        if (record->size() == 1 && record->front().empty())
            continue; // blank line
        if (record->size() != header->size())
            throw ValidationError("expected " + std::to_string(header->size()) + " fields, got "
                                      + std::to_string(record->size()),
                                  row);

        const auto& r = *record;
        bool missing = csv::is_missing(r[pred_col]) || csv::is_missing(r[label_col]);
        for (auto c : group_cols)
            missing = missing || csv::is_missing(r[c]);
        if (missing) {
            ++rejected;
            continue;
        }

        double value = parse_number(r[pred_col], row);
        validate_prediction(value, kind, row);
        predictions.push_back(value);
        labels.push_back(trim(r[label_col]) == positive_label ? 1 : 0);
        for (std::size_t g = 0; g < group_cols.size(); ++g)
            attributes[g].push_back(r[group_cols[g]]);
    }

    if (predictions.empty())
        throw EmptyInputError("no usable rows in input (" + std::to_string(rejected)
                              + " rejected for missing values)");

    return ParsedCohort{Cohort(std::move(predictions), std::move(labels), kind),
                        std::move(attributes), rejected};
}

std::vector<std::uint8_t> GroupAssignment::mask(std::size_t g) const
{
    std::vector<std::uint8_t> out(membership.size());
    for (std::size_t i = 0; i < membership.size(); ++i)
        out[i] = membership[i] == g ? 1 : 0;
    return out;
}

GroupAssignment build_groups(const std::vector<std::vector<std::string>>& attributes,
                             const std::vector<std::optional<std::string>>& reference)
{
    if (attributes.empty())
        throw ConfigError("at least one sensitive attribute column is required");
    if (!reference.empty() && reference.size() != attributes.size())
        throw ConfigError("reference values must be given per attribute column ("
                          + std::to_string(attributes.size()) + " expected, got "
                          + std::to_string(reference.size()) + ")");

    const std::size_t n = attributes.front().size();
    for (const auto& column : attributes)
        if (column.size() != n)
            throw ShapeError("attribute columns differ in length");
    if (n == 0)
        throw EmptyInputError("attribute columns are empty");

    for (std::size_t a = 0; a < reference.size(); ++a) {
        if (!reference[a])
            continue;
        if (std::find(attributes[a].begin(), attributes[a].end(), *reference[a])
            == attributes[a].end())
            throw ConfigError("reference value '" + *reference[a]
                              + "' does not occur in sensitive attribute column "
                              + std::to_string(a + 1));
    }

    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string name = attributes[0][i];
        for (std::size_t a = 1; a < attributes.size(); ++a) {
            name += kGroupJoin;
            name += attributes[a][i];
        }
        names[i] = std::move(name);
    }

    // std::map keeps names sorted, which gives the lexicographic tie rule.
    std::map<std::string, std::size_t> counts;
    for (const auto& name : names)
        ++counts[name];

    // First record of each group tells us its per-attribute values.
    std::map<std::string, std::size_t> first_row;
    for (std::size_t i = 0; i < n; ++i)
        first_row.emplace(names[i], i);

    auto consistent = [&](const std::string& group) {
        std::size_t row = first_row.at(group);
        for (std::size_t a = 0; a < reference.size(); ++a)
            if (reference[a] && attributes[a][row] != *reference[a])
                return false;
        return true;
    };

    std::string ref_name;
    std::size_t best = 0;
    for (const auto& [name, count] : counts) {
        if (consistent(name) && count > best) {
            best = count;
            ref_name = name;
        }
    }
    if (best == 0)
        throw ConfigError("no records match the requested reference group");

    GroupAssignment out;
    out.reference = ref_name;
    out.groups.push_back(ref_name);
    for (const auto& [name, count] : counts)
        if (name != ref_name)
            out.groups.push_back(name);

    std::map<std::string, std::size_t> index;
    for (std::size_t g = 0; g < out.groups.size(); ++g) {
        index[out.groups[g]] = g;
        out.sizes.push_back(counts[out.groups[g]]);
    }
    out.membership.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.membership[i] = index[names[i]];

    if (out.groups.size() > kMaxRecommendedGroups)
        out.warnings.push_back(std::to_string(out.groups.size())
                               + " groups exceed the recommended maximum of "
                               + std::to_string(kMaxRecommendedGroups)
                               + "; plots will recycle colors");
    return out;
}

} // namespace fairaudit
