#pragma once

#include "fairaudit/glm.hpp"

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace fairaudit::demo {

/// One White or Black individual from the bundled COMPAS extract.
struct CompasRecord {
    std::string id;
    std::string race; // "White" or "Black"
    std::string sex;
    double priors = 0.0;
    bool misdemeanor = false;
    bool age_below_25 = false;
    bool age_above_45 = false;
    std::uint8_t recidivism = 0;
};

/// Reads the ProPublica-filtered extract and keeps Caucasian and
/// African-American individuals, recoded as White and Black.
std::vector<CompasRecord> load_compas(std::istream& in);

/// Columns: intercept, priors_count, misdemeanor, age < 25, age > 45.
Eigen::MatrixXd compas_design(const std::vector<CompasRecord>& records);

struct CompasModel {
    glm::LogisticFit fit;
    std::vector<double> probabilities;
};

/// Logistic model of two-year recidivism fitted and evaluated on all records.
CompasModel fit_compas_model(const std::vector<CompasRecord>& records);

/// CSV with columns id, race, sex, two_year_recid, prob (17 significant digits).
void write_predictions(std::ostream& out, const std::vector<CompasRecord>& records,
                       const std::vector<double>& probabilities);

} // namespace fairaudit::demo
