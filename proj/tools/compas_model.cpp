#include "compas_model.hpp"

#include "fairaudit/csv.hpp"
#include "fairaudit/errors.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace fairaudit::demo {

std::vector<CompasRecord> load_compas(std::istream& in)
{
    csv::Reader reader(in);
    auto header = reader.next();
    if (!header)
        throw EmptyInputError("COMPAS file is empty");
    auto col = [&](const std::string& name) {
        auto it = std::find(header->begin(), header->end(), name);
        if (it == header->end())
            throw ConfigError("COMPAS file lacks column '" + name + "'");
        return static_cast<std::size_t>(it - header->begin());
    };
    const auto id = col("id"), race = col("race"), sex = col("sex"), age = col("age_cat"),
               charge = col("c_charge_degree"), priors = col("priors_count"),
               outcome = col("two_year_recid");

    std::vector<CompasRecord> out;
    while (auto row = reader.next()) {
        if (row->size() != header->size())
            continue;
        const auto& r = *row;
        if (r[race] != "African-American" && r[race] != "Caucasian")
            continue;
        CompasRecord rec;
        rec.id = r[id];
        rec.race = r[race] == "Caucasian" ? "White" : "Black";
        rec.sex = r[sex];
        rec.priors = std::stod(r[priors]);
        rec.misdemeanor = r[charge] == "M";
        rec.age_below_25 = r[age] == "Less than 25";
        rec.age_above_45 = r[age] == "Greater than 45";
        rec.recidivism = r[outcome] == "1" ? 1 : 0;
        out.push_back(std::move(rec));
    }
    return out;
}

Eigen::MatrixXd compas_design(const std::vector<CompasRecord>& records)
{
    Eigen::MatrixXd x(static_cast<Eigen::Index>(records.size()), 5);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        x.row(static_cast<Eigen::Index>(i)) << 1.0, r.priors, r.misdemeanor ? 1.0 : 0.0,
            r.age_below_25 ? 1.0 : 0.0, r.age_above_45 ? 1.0 : 0.0;
    }
    return x;
}

CompasModel fit_compas_model(const std::vector<CompasRecord>& records)
{
    std::vector<std::uint8_t> labels;
    labels.reserve(records.size());
    for (const auto& r : records)
        labels.push_back(r.recidivism);
    const auto design = compas_design(records);
    CompasModel model;
    model.fit = glm::fit_logistic(design, labels);
    model.probabilities = glm::predict_prob(model.fit, design);
    return model;
}

void write_predictions(std::ostream& out, const std::vector<CompasRecord>& records,
                       const std::vector<double>& probabilities)
{
    out << "id,race,sex,two_year_recid,prob\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out << fmt::format("{},{},{},{},{:.17g}\n", r.id, r.race, r.sex, int(r.recidivism),
                           probabilities[i]);
    }
}

} // namespace fairaudit::demo
