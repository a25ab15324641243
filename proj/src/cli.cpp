#include "fairaudit/cli.hpp"

#include "fairaudit/errors.hpp"
#include "fairaudit/plots.hpp"
#include "fairaudit/report.hpp"
#include "fairaudit/serialize.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace fairaudit::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string input;
    std::string pred_col;
    std::string label_col;
    std::string positive = "1";
    std::vector<std::string> group_cols;
    std::vector<std::string> references;
    std::optional<double> threshold;
    std::string mode = "diff";
    std::string out_dir;
    std::string emit = "json,svg,md";
};

void add_common(CLI::App& sub, Options& o)
{
    sub.add_option("--input", o.input, "CSV file with a header row")->required();
    sub.add_option("--pred-col", o.pred_col, "Prediction column")->required();
    sub.add_option("--label-col", o.label_col, "Observed label column")->required();
    sub.add_option("--positive", o.positive, "Label value of the positive class")->capture_default_str();
    sub.add_option("--group-col", o.group_cols,
                   "Sensitive attribute column; repeat for intersections (order kept)")
        ->required()
        ->allow_extra_args(false);
    sub.add_option("--reference", o.references,
                   "Reference level, parallel to --group-col ('' leaves it unset)")
        ->allow_extra_args(false);
    sub.add_option("--mode", o.mode, "Fairness table mode: diff or ratio")
        ->capture_default_str()
        ->check(CLI::IsMember({"diff", "difference", "ratio"}));
    sub.add_option("--out", o.out_dir, "Output directory")->required();
    sub.add_option("--emit", o.emit, "Comma list of outputs: json,svg,md")->capture_default_str();
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw ConfigError("cannot write " + path.string());
    f << text;
    if (!f)
        throw ConfigError("failed writing " + path.string());
}

std::set<std::string> parse_emit(const std::string& text)
{
    std::set<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        if (item != "json" && item != "svg" && item != "md")
            throw ConfigError("unknown --emit item '" + item + "' (expected json, svg, md)");
        out.insert(item);
    }
    if (out.empty())
        throw ConfigError("--emit selects no outputs");
    return out;
}

int execute(const Options& o, PredictionKind kind, std::ostream& out, std::ostream& err)
{
    const auto emit = parse_emit(o.emit);
    const DeltaMode mode = parse_delta_mode(o.mode);
    if (!o.references.empty() && o.references.size() != o.group_cols.size())
        throw ConfigError("--reference must be given once per --group-col");

    std::ifstream input(o.input, std::ios::binary);
    if (!input)
        throw ConfigError("cannot open input file '" + o.input + "'");

    ColumnSpec spec{o.pred_col, o.label_col, o.group_cols};
    auto parsed = parse_cohort(input, spec, o.positive, kind);
    if (parsed.rejected_rows > 0)
        err << "warning: " << parsed.rejected_rows << " rows rejected for missing values\n";

    std::vector<std::optional<std::string>> reference;
    for (const auto& r : o.references)
        reference.push_back(r.empty() ? std::nullopt : std::optional<std::string>(r));
    const auto groups = build_groups(parsed.attributes, reference);

    EvaluateOptions options;
    options.threshold = o.threshold;
    options.mode = mode;
    auto result = evaluate(parsed.cohort, groups, options);
    if (parsed.rejected_rows > 0)
        result.warnings.insert(result.warnings.begin(),
                               std::to_string(parsed.rejected_rows) + " rows rejected for missing values");

    const fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir / "plots", ec);
    if (ec)
        throw ConfigError("cannot create output directory '" + o.out_dir + "': " + ec.message());

    if (emit.count("md"))
        write_file(dir / "summary.md", summary_table(result, mode));
    if (emit.count("json"))
        write_file(dir / "metrics.json", dump(to_json(result)));
    if (emit.count("json") || emit.count("svg")) {
        for (const auto& doc : plot::emit_plots(result)) {
            if (emit.count("json"))
                write_file(dir / "plots" / (doc.plot_id + ".json"), dump(plot::to_json(doc)));
            if (emit.count("svg"))
                write_file(dir / "plots" / (doc.plot_id + ".svg"), plot::render_svg(doc));
        }
    }

    for (const auto& w : result.warnings)
        err << "warning: " << w << "\n";
    out << summary_table(result, mode);
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Group fairness audit of binary prediction models", "fairaudit"};
    app.require_subcommand(1);

    Options opts;
    auto* prob = app.add_subcommand("evaluate-prob", "Evaluate probability predictions");
    auto* score = app.add_subcommand("evaluate-score", "Evaluate risk-score predictions");
    auto* bin = app.add_subcommand("evaluate-bin", "Evaluate binary (0/1) predictions");
    for (auto* sub : {prob, score, bin})
        add_common(*sub, opts);
    for (auto* sub : {prob, score})
        sub->add_option("--threshold", opts.threshold,
                        "Classification threshold (default: Youden point of the pooled ROC)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    PredictionKind kind = PredictionKind::Probability;
    if (score->parsed())
        kind = PredictionKind::Score;
    else if (bin->parsed())
        kind = PredictionKind::Binary;

    try {
        return execute(opts, kind, out, err);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << "\n";
        return kExitFailure;
    }
}

} // namespace fairaudit::cli
