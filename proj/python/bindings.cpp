#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "compas_model.hpp"
#include "fairaudit/cli.hpp"
#include "fairaudit/errors.hpp"
#include "fairaudit/plots.hpp"
#include "fairaudit/report.hpp"
#include "fairaudit/serialize.hpp"

#include <fstream>
#include <sstream>

namespace py = pybind11;
using namespace fairaudit;

namespace {

PredictionKind parse_kind(const std::string& kind)
{
    if (kind == "probability" || kind == "prob")
        return PredictionKind::Probability;
    if (kind == "score")
        return PredictionKind::Score;
    if (kind == "binary" || kind == "bin")
        return PredictionKind::Binary;
    throw ConfigError("unknown prediction kind '" + kind + "' (expected probability, score or binary)");
}

std::vector<std::uint8_t> as_labels(const std::vector<int>& labels)
{
    std::vector<std::uint8_t> out;
    out.reserve(labels.size());
    for (int v : labels) {
        if (v != 0 && v != 1)
            throw ValidationError("labels must be 0 or 1", out.size() + 1);
        out.push_back(static_cast<std::uint8_t>(v));
    }
    return out;
}

py::object to_python(const Json& doc)
{
    return py::module_::import("json").attr("loads")(doc.dump());
}

struct Evaluation {
    EvaluationResult result;
    DeltaMode mode;
};

Evaluation run_evaluation(const std::vector<double>& predictions, const std::vector<int>& labels,
                          const std::vector<std::vector<std::string>>& groups, const std::string& kind,
                          const std::vector<std::optional<std::string>>& reference,
                          std::optional<double> threshold, const std::string& mode)
{
    Cohort cohort(predictions, as_labels(labels), parse_kind(kind));
    auto assignment = build_groups(groups, reference);
    EvaluateOptions options;
    options.threshold = threshold;
    options.mode = parse_delta_mode(mode);
    return {evaluate(cohort, assignment, options), options.mode};
}

py::object metrics_dict(const ConfusionCounts& counts)
{
    return to_python(to_json(performance_metrics(counts)));
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Group fairness audit of binary prediction models";

    auto error = py::register_exception<Error>(m, "FairauditError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
    auto validation = py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
    py::register_exception<EmptyInputError>(m, "EmptyInputError", validation.ptr());
    py::register_exception<DegenerateLabelsError>(m, "DegenerateLabelsError", validation.ptr());
    py::register_exception<EmptyGroupError>(m, "EmptyGroupError", validation.ptr());
    py::register_exception<RankDeficiencyError>(m, "RankDeficiencyError", error.ptr());
    py::register_exception<ShapeError>(m, "ShapeError", error.ptr());

    m.def(
        "evaluate",
        [](const std::vector<double>& predictions, const std::vector<int>& labels,
           const std::vector<std::vector<std::string>>& groups, const std::string& kind,
           const std::vector<std::optional<std::string>>& reference, std::optional<double> threshold,
           const std::string& mode) {
            auto ev = run_evaluation(predictions, labels, groups, kind, reference, threshold, mode);
            return to_python(to_json(ev.result));
        },
        py::arg("predictions"), py::arg("labels"), py::arg("groups"), py::arg("kind") = "probability",
        py::arg("reference") = std::vector<std::optional<std::string>>{}, py::arg("threshold") = py::none(),
        py::arg("mode") = "diff",
        "Full evaluation; returns the metrics document as a dict. `groups` holds one list of "
        "attribute values per sensitive column.");

    m.def(
        "report",
        [](const std::vector<double>& predictions, const std::vector<int>& labels,
           const std::vector<std::vector<std::string>>& groups, const std::string& kind,
           const std::vector<std::optional<std::string>>& reference, std::optional<double> threshold,
           const std::string& mode) {
            auto ev = run_evaluation(predictions, labels, groups, kind, reference, threshold, mode);
            py::dict out;
            out["metrics"] = to_python(to_json(ev.result));
            out["summary"] = summary_table(ev.result, ev.mode);
            py::list plots;
            for (const auto& doc : plot::emit_plots(ev.result)) {
                py::dict entry;
                entry["document"] = to_python(plot::to_json(doc));
                entry["svg"] = plot::render_svg(doc);
                plots.append(entry);
            }
            out["plots"] = plots;
            return out;
        },
        py::arg("predictions"), py::arg("labels"), py::arg("groups"), py::arg("kind") = "probability",
        py::arg("reference") = std::vector<std::optional<std::string>>{}, py::arg("threshold") = py::none(),
        py::arg("mode") = "diff", "Evaluation plus the markdown summary and every plot document with its SVG.");

    m.def(
        "wilson_ci",
        [](std::size_t successes, std::size_t trials, double level) {
            return to_python(to_json(wilson_ci(successes, trials, level)));
        },
        py::arg("successes"), py::arg("trials"), py::arg("level") = 0.95);

    m.def(
        "performance_metrics",
        [](std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
            return metrics_dict(ConfusionCounts{tp, fp, tn, fn});
        },
        py::arg("tp"), py::arg("fp"), py::arg("tn"), py::arg("fn"));

    m.def(
        "auc",
        [](const std::vector<double>& predictions, const std::vector<int>& labels) {
            auto y = as_labels(labels);
            auto est = auc_ci_delong(predictions, y);
            py::dict out = to_python(to_json(est)).cast<py::dict>();
            out["trapezoid"] = trapezoid_area(roc_curve(predictions, y));
            return out;
        },
        py::arg("predictions"), py::arg("labels"), "Mann-Whitney AUC with DeLong interval and trapezoid area.");

    m.def(
        "youden_threshold",
        [](const std::vector<double>& predictions, const std::vector<int>& labels) {
            return youden_threshold(roc_curve(predictions, as_labels(labels)));
        },
        py::arg("predictions"), py::arg("labels"));

    m.def(
        "logistic_recalibration",
        [](const std::vector<double>& probabilities, const std::vector<int>& labels) {
            return to_python(to_json(logistic_recalibration(probabilities, as_labels(labels))));
        },
        py::arg("probabilities"), py::arg("labels"), "Intercept and slope of outcome on logit(p).");

    m.def(
        "platt_scale",
        [](const std::vector<double>& scores, const std::vector<int>& labels) {
            auto res = platt_scale(scores, as_labels(labels));
            py::dict out = to_python(to_json(res.model)).cast<py::dict>();
            out["probabilities"] = res.probabilities;
            out["warnings"] = res.warnings;
            return out;
        },
        py::arg("scores"), py::arg("labels"));

    m.def(
        "fit_compas",
        [](const std::string& path) {
            std::ifstream in(path);
            if (!in)
                throw ConfigError("cannot open '" + path + "'");
            auto records = demo::load_compas(in);
            auto model = demo::fit_compas_model(records);
            py::dict out;
            std::vector<double> coef(model.fit.coefficients.data(),
                                     model.fit.coefficients.data() + model.fit.coefficients.size());
            std::vector<std::string> race, sex;
            std::vector<int> labels;
            for (const auto& r : records) {
                race.push_back(r.race);
                sex.push_back(r.sex);
                labels.push_back(r.recidivism);
            }
            out["coefficients"] = coef;
            out["converged"] = model.fit.converged;
            out["probabilities"] = model.probabilities;
            out["labels"] = labels;
            out["race"] = race;
            out["sex"] = sex;
            return out;
        },
        py::arg("path"), "Fits the recidivism model on the bundled COMPAS extract.");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line front end in-process; returns (exit_code, stdout, stderr).");

#ifdef FAIRAUDIT_VERSION
    m.attr("__version__") = FAIRAUDIT_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
