#include "fairaudit/plots.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairaudit::plot {

std::string_view to_string(Mark mark)
{
    switch (mark) {
    case Mark::Line: return "line";
    case Mark::Point: return "point";
    case Mark::Diamond: return "diamond";
    case Mark::Box: return "box";
    }
    return "point";
}

namespace {

std::optional<double> opt(const MetricEstimate& e, double MetricEstimate::*field)
{
    if (!e.defined)
        return std::nullopt;
    if (field != &MetricEstimate::value && !e.has_interval)
        return std::nullopt;
    return e.*field;
}

std::vector<LegendEntry> group_legend(const std::vector<std::string>& groups)
{
    std::vector<LegendEntry> legend;
    for (std::size_t g = 0; g < groups.size(); ++g)
        legend.push_back({groups[g], g % kPalette.size()});
    return legend;
}

std::size_t color_of(const EvaluationResult& r, const std::string& group)
{
    auto it = std::find(r.groups.begin(), r.groups.end(), group);
    return static_cast<std::size_t>(it - r.groups.begin()) % kPalette.size();
}

PlotDocument base_document(const EvaluationResult& r, std::string id, std::string title)
{
    PlotDocument doc;
    doc.plot_id = std::move(id);
    doc.title = std::move(title);
    doc.legend = group_legend(r.groups);
    if (r.groups.size() > kPalette.size())
        doc.annotations.push_back(fmt::format("{} groups exceed the {}-colour palette; colours recycle",
                                              r.groups.size(), kPalette.size()));
    return doc;
}

PlotDocument group_metrics_doc(const EvaluationResult& r)
{
    auto doc = base_document(r, "group_metrics", "Group-specific performance metrics");
    doc.annotations.push_back(fmt::format("Threshold {:.6g} ({}); whiskers show 95% CIs; shaded "
                                          "band is 0.8-1.25 x the reference group ({})",
                                          r.threshold, to_string(r.provenance), r.reference));
    const GroupMetrics* ref = nullptr;
    for (const auto& g : r.group_metrics)
        if (g.group == r.reference)
            ref = &g;

    using Field = MetricEstimate GroupMetrics::*;
    const std::array<std::tuple<const char*, const char*, Field>, 5> metrics = {{
        {"accuracy", "Accuracy", &GroupMetrics::accuracy},
        {"tpr", "TPR", &GroupMetrics::tpr},
        {"fpr", "FPR", &GroupMetrics::fpr},
        {"ppv", "PPV", &GroupMetrics::ppv},
        {"npv", "NPV", &GroupMetrics::npv},
    }};
    for (const auto& [id, title, field] : metrics) {
        Panel panel;
        panel.id = id;
        panel.title = title;
        panel.y_label = title;
        panel.x_categories = r.groups;
        panel.y_range = std::array<double, 2>{0.0, 1.0};
        if (ref) {
            auto band = disparity_band(id, ref->*field);
            if (band.defined)
                panel.bands.push_back({band.low, band.high, "0.8-1.25 x reference"});
        }
        doc.panels.push_back(panel);

        for (std::size_t g = 0; g < r.group_metrics.size(); ++g) {
            const auto& m = r.group_metrics[g];
            const auto& est = m.*field;
            Series s;
            s.name = fmt::format("{}/{}", id, m.group);
            s.panel = id;
            s.group = m.group;
            s.mark = Mark::Point;
            s.color = color_of(r, m.group);
            s.columns["x"] = {static_cast<double>(g)};
            s.columns["y"] = {opt(est, &MetricEstimate::value)};
            s.columns["y_low"] = {opt(est, &MetricEstimate::ci_low)};
            s.columns["y_high"] = {opt(est, &MetricEstimate::ci_high)};
            doc.series.push_back(std::move(s));
        }
    }
    return doc;
}

PlotDocument roc_doc(const EvaluationResult& r)
{
    auto doc = base_document(r, "roc", "ROC curves by group");
    Panel panel;
    panel.id = "roc";
    panel.title = "ROC";
    panel.x_label = "False positive rate";
    panel.y_label = "True positive rate";
    panel.x_range = std::array<double, 2>{0.0, 1.0};
    panel.y_range = std::array<double, 2>{0.0, 1.0};
    panel.diagonal = true;
    doc.panels.push_back(panel);

    for (auto& entry : doc.legend) {
        for (const auto& c : r.roc->groups) {
            if (c.group != entry.label)
                continue;
            if (c.auc.has_interval)
                entry.label = fmt::format("{}: AUC {:.3f} ({:.3f}-{:.3f})", c.group, c.auc.value,
                                          c.auc.ci_low, c.auc.ci_high);
            else
                entry.label = fmt::format("{}: AUC {:.3f}", c.group, c.auc.value);
        }
    }
    for (const auto& c : r.roc->groups) {
        Series s;
        s.name = fmt::format("roc/{}", c.group);
        s.panel = "roc";
        s.group = c.group;
        s.mark = Mark::Line;
        s.color = color_of(r, c.group);
        auto& x = s.columns["x"];
        auto& y = s.columns["y"];
        for (const auto& p : c.points) {
            x.push_back(p.fpr);
            y.push_back(p.tpr);
        }
        doc.series.push_back(std::move(s));
    }
    return doc;
}

PlotDocument calibration_curve_doc(const EvaluationResult& r)
{
    auto doc = base_document(r, "calibration_curve", "Calibration curves (logistic recalibration)");
    if (r.calibration->platt)
        doc.annotations.push_back("Scores converted to probabilities by Platt scaling");
    Panel panel;
    panel.id = "calibration";
    panel.title = "Calibration";
    panel.x_label = "Predicted probability";
    panel.y_label = "Observed proportion";
    panel.x_range = std::array<double, 2>{0.0, 1.0};
    panel.y_range = std::array<double, 2>{0.0, 1.0};
    panel.diagonal = true;
    doc.panels.push_back(panel);

    for (const auto& c : r.calibration->curves) {
        Series s;
        s.name = fmt::format("calibration/{}", c.group);
        s.panel = "calibration";
        s.group = c.group;
        s.mark = c.degenerate ? Mark::Point : Mark::Line;
        s.color = color_of(r, c.group);
        auto& x = s.columns["x"];
        auto& y = s.columns["y"];
        for (const auto& p : c.grid) {
            x.push_back(p.predicted);
            y.push_back(p.observed);
        }
        doc.series.push_back(std::move(s));
    }
    return doc;
}

PlotDocument calibration_large_doc(const EvaluationResult& r)
{
    auto doc = base_document(r, "calibration_large", "Calibration-in-the-large");
    doc.annotations.push_back(fmt::format(
        "Circle: observed positive proportion with 95% CI; diamond: proportion predicted positive at threshold {:.6g}",
        r.threshold));
    Panel panel;
    panel.id = "calibration_large";
    panel.title = "Observed vs predicted positives";
    panel.y_label = "Proportion";
    panel.x_categories = r.groups;
    panel.y_range = std::array<double, 2>{0.0, 1.0};
    doc.panels.push_back(panel);

    for (std::size_t g = 0; g < r.calibration_large.size(); ++g) {
        const auto& c = r.calibration_large[g];
        Series observed;
        observed.name = fmt::format("calibration_large/observed/{}", c.group);
        observed.panel = panel.id;
        observed.group = c.group;
        observed.mark = Mark::Point;
        observed.color = color_of(r, c.group);
        observed.columns["x"] = {static_cast<double>(g) - 0.15};
        observed.columns["y"] = {opt(c.observed_rate, &MetricEstimate::value)};
        observed.columns["y_low"] = {opt(c.observed_rate, &MetricEstimate::ci_low)};
        observed.columns["y_high"] = {opt(c.observed_rate, &MetricEstimate::ci_high)};
        doc.series.push_back(std::move(observed));

        Series predicted;
        predicted.name = fmt::format("calibration_large/predicted/{}", c.group);
        predicted.panel = panel.id;
        predicted.group = c.group;
        predicted.mark = Mark::Diamond;
        predicted.color = color_of(r, c.group);
        predicted.columns["x"] = {static_cast<double>(g) + 0.15};
        predicted.columns["y"] = {c.predicted_positive_rate};
        doc.series.push_back(std::move(predicted));
    }
    return doc;
}

PlotDocument distribution_doc(const EvaluationResult& r)
{
    auto doc = base_document(r, "distribution", "Prediction distribution by outcome and group");
    for (int label = 0; label < 2; ++label) {
        Panel panel;
        panel.id = fmt::format("label_{}", label);
        panel.title = fmt::format("Observed label = {}", label);
        panel.y_label = "Prediction";
        panel.x_categories = r.groups;
        doc.panels.push_back(panel);
    }
    for (const auto& b : *r.distribution) {
        const auto g = static_cast<double>(
            std::find(r.groups.begin(), r.groups.end(), b.group) - r.groups.begin());
        const std::string panel = fmt::format("label_{}", b.label);
        if (b.n == 0)
            continue;
        Series box;
        box.name = fmt::format("{}/box/{}", panel, b.group);
        box.panel = panel;
        box.group = b.group;
        box.mark = Mark::Box;
        box.color = color_of(r, b.group);
        box.columns["x"] = {g};
        box.columns["q1"] = {b.q1};
        box.columns["median"] = {b.median};
        box.columns["q3"] = {b.q3};
        box.columns["whisker_low"] = {b.whisker_low};
        box.columns["whisker_high"] = {b.whisker_high};
        doc.series.push_back(std::move(box));

        if (!b.outliers.empty()) {
            Series out;
            out.name = fmt::format("{}/outliers/{}", panel, b.group);
            out.panel = panel;
            out.group = b.group;
            out.mark = Mark::Point;
            out.color = box.color;
            for (double v : b.outliers) {
                out.columns["x"].push_back(g);
                out.columns["y"].push_back(v);
            }
            doc.series.push_back(std::move(out));
        }
    }
    return doc;
}

PlotDocument number_needed_doc(const EvaluationResult& r)
{
    auto doc = base_document(r, "number_needed", "Number needed for a true positive / true negative");
    doc.annotations.push_back("Gaps mark thresholds where the quantity is undefined");
    const auto& nn = *r.number_needed;
    for (const auto& [id, title] : {std::pair{"nntp", "NNTP"}, std::pair{"nntn", "NNTN"}}) {
        Panel panel;
        panel.id = id;
        panel.title = title;
        panel.x_label = "Threshold";
        panel.y_label = title;
        doc.panels.push_back(panel);
    }
    for (const auto& c : nn.curves) {
        for (const std::string id : {"nntp", "nntn"}) {
            Series s;
            s.name = fmt::format("{}/{}", id, c.group);
            s.panel = id;
            s.group = c.group;
            s.mark = Mark::Line;
            s.color = color_of(r, c.group);
            for (const auto& p : c.points) {
                s.columns["x"].push_back(p.threshold);
                s.columns["y"].push_back(id == "nntp" ? p.nntp : p.nntn);
            }
            doc.series.push_back(std::move(s));
        }
    }
    return doc;
}

} // namespace

std::vector<PlotDocument> emit_plots(const EvaluationResult& result)
{
    std::vector<PlotDocument> docs;
    docs.push_back(group_metrics_doc(result));
    if (result.roc)
        docs.push_back(roc_doc(result));
    if (result.calibration && !result.calibration->curves.empty())
        docs.push_back(calibration_curve_doc(result));
    docs.push_back(calibration_large_doc(result));
    if (result.distribution)
        docs.push_back(distribution_doc(result));
    if (result.number_needed)
        docs.push_back(number_needed_doc(result));
    return docs;
}

Json to_json(const PlotDocument& doc)
{
    Json panels = Json::array();
    for (const auto& p : doc.panels) {
        Json bands = Json::array();
        for (const auto& b : p.bands)
            bands.push_back(Json{{"low", b.low}, {"high", b.high}, {"label", b.label}});
        Json j{{"id", p.id},
               {"title", p.title},
               {"x_label", p.x_label},
               {"y_label", p.y_label},
               {"x_range", p.x_range ? Json{(*p.x_range)[0], (*p.x_range)[1]} : Json(nullptr)},
               {"y_range", p.y_range ? Json{(*p.y_range)[0], (*p.y_range)[1]} : Json(nullptr)},
               {"x_categories", p.x_categories},
               {"bands", std::move(bands)},
               {"diagonal", p.diagonal}};
        panels.push_back(std::move(j));
    }
    Json series = Json::array();
    for (const auto& s : doc.series) {
        Json columns = Json::object();
        for (const auto& [name, values] : s.columns) {
            Json arr = Json::array();
            for (const auto& v : values)
                arr.push_back(v && std::isfinite(*v) ? Json(*v) : Json(nullptr));
            columns[name] = std::move(arr);
        }
        series.push_back(Json{{"name", s.name},
                              {"panel", s.panel},
                              {"group", s.group},
                              {"mark", to_string(s.mark)},
                              {"color", kPalette[s.color % kPalette.size()]},
                              {"columns", std::move(columns)}});
    }
    Json legend = Json::array();
    for (const auto& l : doc.legend)
        legend.push_back(Json{{"label", l.label}, {"color", kPalette[l.color % kPalette.size()]}});
    return Json{{"plot_id", doc.plot_id},
                {"title", doc.title},
                {"panels", std::move(panels)},
                {"series", std::move(series)},
                {"legend", std::move(legend)},
                {"annotations", doc.annotations}};
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kPanelWidth = 340.0;
constexpr double kPanelHeight = 270.0;
constexpr double kMarginLeft = 58.0;
constexpr double kMarginRight = 14.0;
constexpr double kMarginTop = 26.0;
constexpr double kMarginBottom = 56.0;
constexpr double kTitleHeight = 36.0;
constexpr double kLegendRow = 18.0;
constexpr std::size_t kMaxColumns = 3;

std::string escape(std::string_view text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string num(double v)
{
    std::string s = fmt::format("{:.2f}", v);
    return s == "-0.00" ? "0.00" : s;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v)
    {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void include(const std::optional<double>& v)
    {
        if (v)
            include(*v);
    }
    void finish(double pad_fraction)
    {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
            return;
        }
        if (lo == hi) {
            const double pad = lo == 0.0 ? 0.5 : std::abs(lo) * 0.1;
            lo -= pad;
            hi += pad;
            return;
        }
        const double pad = (hi - lo) * pad_fraction;
        lo -= pad;
        hi += pad;
    }
};

struct Frame {
    double left, top, width, height;
    Range x, y;

    double px(double v) const { return left + (v - x.lo) / (x.hi - x.lo) * width; }
    double py(double v) const { return top + height - (v - y.lo) / (y.hi - y.lo) * height; }
};

Frame frame_for(const Panel& panel, const std::vector<const Series*>& series, double ox, double oy)
{
    Frame f;
    f.left = ox + kMarginLeft;
    f.top = oy + kMarginTop;
    f.width = kPanelWidth - kMarginLeft - kMarginRight;
    f.height = kPanelHeight - kMarginTop - kMarginBottom;

    if (!panel.x_categories.empty()) {
        f.x.lo = -0.5;
        f.x.hi = static_cast<double>(panel.x_categories.size()) - 0.5;
    } else if (panel.x_range) {
        f.x.lo = (*panel.x_range)[0];
        f.x.hi = (*panel.x_range)[1];
    } else {
        for (const auto* s : series)
            if (auto it = s->columns.find("x"); it != s->columns.end())
                for (const auto& v : it->second)
                    f.x.include(v);
        f.x.finish(0.04);
    }

    if (panel.y_range) {
        f.y.lo = (*panel.y_range)[0];
        f.y.hi = (*panel.y_range)[1];
    } else {
        for (const auto* s : series)
            for (const auto& [name, values] : s->columns)
                if (name != "x")
                    for (const auto& v : values)
                        f.y.include(v);
        for (const auto& b : panel.bands) {
            f.y.include(b.low);
            f.y.include(b.high);
        }
        f.y.finish(0.05);
    }
    return f;
}

std::optional<double> at(const Series& s, const char* column, std::size_t i)
{
    auto it = s.columns.find(column);
    if (it == s.columns.end() || i >= it->second.size())
        return std::nullopt;
    return it->second[i];
}

void draw_series(std::string& out, const Series& s, const Frame& f)
{
    const std::string colour(kPalette[s.color % kPalette.size()]);
    const auto& xs = s.columns.at("x");
    switch (s.mark) {
    case Mark::Line: {
        std::string d;
        bool pen_down = false;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto x = xs[i];
            auto y = at(s, "y", i);
            if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) {
                pen_down = false;
                continue;
            }
            d += fmt::format("{}{} {} ", pen_down ? "L" : "M", num(f.px(*x)), num(f.py(*y)));
            pen_down = true;
        }
        if (!d.empty()) {
            d.pop_back();
            out += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"/>\n", d,
                               colour);
        }
        break;
    }
    case Mark::Point:
    case Mark::Diamond:
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto x = xs[i];
            auto y = at(s, "y", i);
            if (!x || !y)
                continue;
            const double cx = f.px(*x);
            const double cy = f.py(std::clamp(*y, f.y.lo, f.y.hi));
            auto lo = at(s, "y_low", i);
            auto hi = at(s, "y_high", i);
            if (lo && hi) {
                const double y1 = f.py(std::clamp(*lo, f.y.lo, f.y.hi));
                const double y2 = f.py(std::clamp(*hi, f.y.lo, f.y.hi));
                out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"{3}\" stroke-width=\"1.4\"/>\n",
                                   num(cx), num(y1), num(y2), colour);
                for (double yy : {y1, y2})
                    out += fmt::format("<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"{3}\" stroke-width=\"1.4\"/>\n",
                                       num(cx - 4.0), num(cx + 4.0), num(yy), colour);
            }
            if (s.mark == Mark::Point)
                out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"{}\"/>\n", num(cx), num(cy),
                                   colour);
            else
                out += fmt::format("<polygon points=\"{0},{2} {1},{3} {0},{4} {5},{3}\" fill=\"{6}\"/>\n",
                                   num(cx), num(cx + 4.5), num(cy - 4.5), num(cy), num(cy + 4.5),
                                   num(cx - 4.5), colour);
        }
        break;
    case Mark::Box:
        for (std::size_t i = 0; i < xs.size(); ++i) {
            auto x = xs[i];
            auto q1 = at(s, "q1", i);
            auto med = at(s, "median", i);
            auto q3 = at(s, "q3", i);
            auto wl = at(s, "whisker_low", i);
            auto wh = at(s, "whisker_high", i);
            if (!x || !q1 || !med || !q3 || !wl || !wh)
                continue;
            const double half = f.width / static_cast<double>(f.x.hi - f.x.lo) * 0.25;
            const double cx = f.px(*x);
            out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"{3}\"/>\n", num(cx),
                               num(f.py(*wl)), num(f.py(*wh)), colour);
            out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"{}\" stroke-width=\"1.4\"/>\n",
                               num(cx - half), num(f.py(*q3)), num(2.0 * half),
                               num(f.py(*q1) - f.py(*q3)), colour);
            out += fmt::format("<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                               num(cx - half), num(cx + half), num(f.py(*med)), colour);
        }
        break;
    }
}

void draw_axes(std::string& out, const Panel& panel, const Frame& f)
{
    for (const auto& b : panel.bands) {
        const double lo = std::clamp(b.low, f.y.lo, f.y.hi);
        const double hi = std::clamp(b.high, f.y.lo, f.y.hi);
        out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#BBBBBB\" fill-opacity=\"0.35\"/>\n",
                           num(f.left), num(f.py(hi)), num(f.width), num(f.py(lo) - f.py(hi)));
    }
    if (panel.diagonal) {
        const double lo = std::max(f.x.lo, f.y.lo);
        const double hi = std::min(f.x.hi, f.y.hi);
        out += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n",
                           num(f.px(lo)), num(f.py(lo)), num(f.px(hi)), num(f.py(hi)));
    }
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#333333\"/>\n",
                       num(f.left), num(f.top), num(f.width), num(f.height));

    for (int i = 0; i <= 4; ++i) {
        const double v = f.y.lo + (f.y.hi - f.y.lo) * i / 4.0;
        const double y = f.py(v);
        out += fmt::format("<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"#333333\"/>\n",
                           num(f.left - 4.0), num(f.left), num(y));
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>\n",
                           num(f.left - 6.0), num(y + 3.5), escape(fmt::format("{:.3g}", v)));
    }

    const double base = f.top + f.height;
    if (!panel.x_categories.empty()) {
        for (std::size_t i = 0; i < panel.x_categories.size(); ++i) {
            const double x = f.px(static_cast<double>(i));
            out += fmt::format("<text x=\"{0}\" y=\"{1}\" font-size=\"9\" text-anchor=\"end\" "
                               "transform=\"rotate(-25 {0} {1})\">{2}</text>\n",
                               num(x), num(base + 12.0), escape(panel.x_categories[i]));
        }
    } else {
        for (int i = 0; i <= 4; ++i) {
            const double v = f.x.lo + (f.x.hi - f.x.lo) * i / 4.0;
            const double x = f.px(v);
            out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#333333\"/>\n",
                               num(x), num(base), num(base + 4.0));
            out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n",
                               num(x), num(base + 15.0), escape(fmt::format("{:.3g}", v)));
        }
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
                           num(f.left + f.width / 2.0), num(base + 32.0), escape(panel.x_label));
    }
    const double yc = f.top + f.height / 2.0;
    out += fmt::format("<text x=\"{0}\" y=\"{1}\" font-size=\"11\" text-anchor=\"middle\" "
                       "transform=\"rotate(-90 {0} {1})\">{2}</text>\n",
                       num(f.left - 42.0), num(yc), escape(panel.y_label));
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" font-weight=\"bold\" text-anchor=\"middle\">{}</text>\n",
                       num(f.left + f.width / 2.0), num(f.top - 8.0), escape(panel.title));
}

} // namespace

std::string render_svg(const PlotDocument& doc)
{
    const std::size_t n_panels = std::max<std::size_t>(doc.panels.size(), 1);
    const std::size_t cols = std::min(n_panels, kMaxColumns);
    const std::size_t rows = (n_panels + cols - 1) / cols;
    const std::size_t legend_rows = (doc.legend.size() + 1) / 2 + doc.annotations.size();
    const double width = kPanelWidth * static_cast<double>(cols);
    const double height = kTitleHeight + kPanelHeight * static_cast<double>(rows)
                          + kLegendRow * static_cast<double>(legend_rows) + 12.0;

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
                       "viewBox=\"0 0 {0} {1}\" font-family=\"Helvetica, Arial, sans-serif\">\n",
                       num(width), num(height));
    out += fmt::format("<title>{}</title>\n", escape(doc.title));
    out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", num(width),
                       num(height));
    out += fmt::format("<text x=\"{}\" y=\"24\" font-size=\"15\" font-weight=\"bold\" text-anchor=\"middle\">{}</text>\n",
                       num(width / 2.0), escape(doc.title));

    for (std::size_t p = 0; p < doc.panels.size(); ++p) {
        const auto& panel = doc.panels[p];
        std::vector<const Series*> members;
        for (const auto& s : doc.series)
            if (s.panel == panel.id)
                members.push_back(&s);
        const double ox = kPanelWidth * static_cast<double>(p % cols);
        const double oy = kTitleHeight + kPanelHeight * static_cast<double>(p / cols);
        const Frame f = frame_for(panel, members, ox, oy);
        out += fmt::format("<g id=\"panel-{}\">\n", escape(panel.id));
        draw_axes(out, panel, f);
        for (const auto* s : members)
            draw_series(out, *s, f);
        out += "</g>\n";
    }

    double y = kTitleHeight + kPanelHeight * static_cast<double>(rows) + 6.0;
    out += "<g id=\"legend\">\n";
    for (std::size_t i = 0; i < doc.legend.size(); ++i) {
        const double x = 20.0 + (i % 2) * width / 2.0;
        const double yy = y + kLegendRow * static_cast<double>(i / 2);
        out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", num(x),
                           num(yy), kPalette[doc.legend[i].color % kPalette.size()]);
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n", num(x + 18.0),
                           num(yy + 10.0), escape(doc.legend[i].label));
    }
    y += kLegendRow * static_cast<double>((doc.legend.size() + 1) / 2);
    for (const auto& note : doc.annotations) {
        out += fmt::format("<text x=\"20\" y=\"{}\" font-size=\"10\" fill=\"#555555\">{}</text>\n",
                           num(y + 10.0), escape(note));
        y += kLegendRow;
    }
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace fairaudit::plot
