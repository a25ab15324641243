#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fairaudit {

enum class PredictionKind { Probability, Score, Binary };

std::string_view to_string(PredictionKind kind);

/// Validated predictions and 0/1 labels. Immutable once built.
class Cohort {
public:
    /// Throws ValidationError when a prediction violates its kind's range,
    /// EmptyInputError for zero records, ShapeError on length mismatch.
    Cohort(std::vector<double> predictions, std::vector<std::uint8_t> labels,
           PredictionKind kind);

    std::span<const double> predictions() const noexcept { return predictions_; }
    std::span<const std::uint8_t> labels() const noexcept { return labels_; }
    PredictionKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t positives() const noexcept { return positives_; }
    bool has_both_classes() const noexcept {
        return positives_ > 0 && positives_ < labels_.size();
    }

private:
    std::vector<double> predictions_;
    std::vector<std::uint8_t> labels_;
    PredictionKind kind_;
    std::size_t positives_ = 0;
};

struct ColumnSpec {
    std::string prediction;
    std::string label;
    std::vector<std::string> groups;
};

struct ParsedCohort {
    Cohort cohort;
    /// One vector per requested group column, in ColumnSpec order.
    std::vector<std::vector<std::string>> attributes;
    /// Rows dropped because a required cell was empty or "NA".
    std::size_t rejected_rows = 0;
};

/// Reads a headed CSV. Labels equal to `positive_label` become 1, all others 0.
ParsedCohort parse_cohort(std::istream& source, const ColumnSpec& spec,
                          std::string_view positive_label, PredictionKind kind);

/// Join token for intersectional group names.
inline constexpr std::string_view kGroupJoin = " & ";

/// Groups above this count still compute but raise a warning.
inline constexpr std::size_t kMaxRecommendedGroups = 7;

struct GroupAssignment {
    /// Index into `groups` for every record.
    std::vector<std::size_t> membership;
    /// Reference first, then the remaining names in lexicographic order.
    std::vector<std::string> groups;
    std::vector<std::size_t> sizes;
    std::string reference;
    std::vector<std::string> warnings;

    std::size_t group_count() const noexcept { return groups.size(); }
    /// 0/1 mask of the records belonging to group `g`.
    std::vector<std::uint8_t> mask(std::size_t g) const;
};

/// Builds (possibly intersectional) groups from attribute columns.
///
/// `reference` is parallel to `attributes`; a missing entry leaves that
/// attribute unconstrained. With every entry given the reference is their
/// join; otherwise it is the largest group consistent with the given values,
/// ties going to the lexicographically smallest name.
GroupAssignment build_groups(const std::vector<std::vector<std::string>>& attributes,
                             const std::vector<std::optional<std::string>>& reference = {});

} // namespace fairaudit
