#include "fairaudit/serialize.hpp"

#include <cmath>

namespace fairaudit {

namespace {

Json number(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json number(const std::optional<double>& v)
{
    return v ? number(*v) : Json(nullptr);
}

Json counts_json(const ConfusionCounts& c)
{
    return Json{{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn}};
}

} // namespace

Json to_json(const MetricEstimate& e)
{
    Json j;
    j["value"] = e.defined ? number(e.value) : Json(nullptr);
    j["ci_low"] = e.defined && e.has_interval ? number(e.ci_low) : Json(nullptr);
    j["ci_high"] = e.defined && e.has_interval ? number(e.ci_high) : Json(nullptr);
    j["defined"] = e.defined;
    return j;
}

Json to_json(const GroupMetrics& m)
{
    Json j;
    j["group"] = m.group;
    j["n"] = m.n;
    j["counts"] = counts_json(m.counts);
    j["accuracy"] = to_json(m.accuracy);
    j["tpr"] = to_json(m.tpr);
    j["fpr"] = to_json(m.fpr);
    j["ppv"] = to_json(m.ppv);
    j["npv"] = to_json(m.npv);
    j["ber"] = to_json(m.ber);
    j["nntp"] = to_json(m.nntp);
    j["nntn"] = to_json(m.nntn);
    return j;
}

Json to_json(const FairnessTable& t)
{
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back(Json{{"group", r.group},
                            {"n", r.n},
                            {"tpr_delta", number(r.tpr_delta)},
                            {"fpr_delta", number(r.fpr_delta)},
                            {"ber_delta", number(r.ber_delta)}});
    return Json{{"mode", to_string(t.mode)},
                {"reference", Json{{"group", t.reference}, {"n", t.reference_n}}},
                {"rows", std::move(rows)}};
}

Json to_json(const RocCurve& c)
{
    Json points = Json::array();
    for (const auto& p : c.points)
        points.push_back(Json{{"threshold", number(p.threshold)}, {"fpr", p.fpr}, {"tpr", p.tpr}});
    return Json{{"group", c.group}, {"auc", to_json(c.auc)}, {"points", std::move(points)}};
}

Json to_json(const RecalModel& m)
{
    return Json{{"intercept", number(m.intercept)},
                {"slope", number(m.slope)},
                {"source", to_string(m.source)},
                {"converged", m.fit.converged},
                {"iterations", m.fit.iterations},
                {"deviance", number(m.fit.deviance)},
                {"separation", m.fit.separation_flag}};
}

Json to_json(const BoxplotStats& b)
{
    Json outliers = Json::array();
    for (double v : b.outliers)
        outliers.push_back(number(v));
    return Json{{"group", b.group},
                {"label", b.label},
                {"n", b.n},
                {"q1", number(b.q1)},
                {"median", number(b.median)},
                {"q3", number(b.q3)},
                {"whisker_low", number(b.whisker_low)},
                {"whisker_high", number(b.whisker_high)},
                {"outliers", std::move(outliers)}};
}

Json to_json(const EvaluationResult& r)
{
    Json doc;
    doc["kind"] = to_string(r.kind);
    doc["threshold"] = Json{{"value", number(r.threshold)}, {"provenance", to_string(r.provenance)}};
    doc["reference"] = r.reference;

    Json groups = Json::array();
    for (const auto& g : r.group_metrics)
        groups.push_back(to_json(g));
    doc["groups"] = std::move(groups);

    doc["fairness"] = r.fairness ? to_json(*r.fairness) : Json(nullptr);

    if (r.roc) {
        Json per_group = Json::array();
        for (const auto& c : r.roc->groups)
            per_group.push_back(to_json(c));
        doc["roc"] = Json{{"pooled", to_json(r.roc->pooled)}, {"groups", std::move(per_group)}};
    } else {
        doc["roc"] = nullptr;
    }

    Json calibration;
    Json citl = Json::array();
    for (const auto& c : r.calibration_large)
        citl.push_back(Json{{"group", c.group},
                            {"n", c.n},
                            {"observed_rate", to_json(c.observed_rate)},
                            {"predicted_positive_rate", number(c.predicted_positive_rate)}});
    if (r.calibration) {
        calibration["platt"] = r.calibration->platt ? to_json(*r.calibration->platt) : Json(nullptr);
        Json models = Json::array();
        for (const auto& m : r.calibration->models) {
            Json entry = to_json(m.model);
            entry["group"] = m.group;
            models.push_back(std::move(entry));
        }
        calibration["models"] = std::move(models);
        Json curves = Json::array();
        for (const auto& c : r.calibration->curves) {
            Json grid = Json::array();
            for (const auto& p : c.grid)
                grid.push_back(Json{{"predicted", number(p.predicted)}, {"observed", number(p.observed)}});
            curves.push_back(Json{{"group", c.group}, {"degenerate", c.degenerate}, {"grid", std::move(grid)}});
        }
        calibration["curves"] = std::move(curves);
    } else {
        calibration["platt"] = nullptr;
        calibration["models"] = nullptr;
        calibration["curves"] = nullptr;
    }
    calibration["in_the_large"] = std::move(citl);
    doc["calibration"] = std::move(calibration);

    if (r.distribution) {
        Json boxes = Json::array();
        for (const auto& b : *r.distribution)
            boxes.push_back(to_json(b));
        doc["distribution"] = std::move(boxes);
    } else {
        doc["distribution"] = nullptr;
    }

    if (r.number_needed) {
        Json curves = Json::array();
        for (const auto& c : r.number_needed->curves) {
            Json points = Json::array();
            for (const auto& p : c.points)
                points.push_back(Json{{"threshold", number(p.threshold)},
                                      {"nntp", number(p.nntp)},
                                      {"nntn", number(p.nntn)}});
            curves.push_back(Json{{"group", c.group}, {"points", std::move(points)}});
        }
        Json thresholds = Json::array();
        for (double t : r.number_needed->thresholds)
            thresholds.push_back(number(t));
        doc["number_needed"] = Json{{"thresholds", std::move(thresholds)}, {"curves", std::move(curves)}};
    } else {
        doc["number_needed"] = nullptr;
    }

    doc["warnings"] = r.warnings;
    return doc;
}

std::string dump(const Json& doc)
{
    return doc.dump(2) + "\n";
}

} // namespace fairaudit
