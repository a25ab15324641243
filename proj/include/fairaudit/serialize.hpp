#pragma once

#include "fairaudit/report.hpp"

#include "json.hpp"

namespace fairaudit {

using Json = nlohmann::ordered_json;

/// {value, ci_low, ci_high, defined}; nulls where undefined or without interval.
Json to_json(const MetricEstimate& estimate);
Json to_json(const GroupMetrics& metrics);
Json to_json(const FairnessTable& table);
Json to_json(const RocCurve& curve);
Json to_json(const RecalModel& model);
Json to_json(const BoxplotStats& box);

/// Full result document written as metrics.json.
Json to_json(const EvaluationResult& result);

/// Serialized text with a trailing newline; non-finite numbers become null.
std::string dump(const Json& doc);

} // namespace fairaudit
