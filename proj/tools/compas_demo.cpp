// Fits the recidivism model (prior offences, misdemeanour charge, age under
// 25 / over 45) on the bundled COMPAS extract and writes per-person
// probabilities for `fairaudit evaluate-prob`.
//
//   compas_demo data/compas.csv compas_predictions.csv

#include "compas_model.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    if (argc != 3) {
        std::cerr << "usage: compas_demo <compas.csv> <predictions.csv>\n";
        return 2;
    }
    try {
        std::ifstream in(argv[1]);
        if (!in) {
            std::cerr << "cannot open " << argv[1] << "\n";
            return 2;
        }
        const auto records = fairaudit::demo::load_compas(in);
        const auto model = fairaudit::demo::fit_compas_model(records);
        std::ofstream out(argv[2]);
        fairaudit::demo::write_predictions(out, records, model.probabilities);

        const auto& b = model.fit.coefficients;
        std::cout << fmt::format("n = {}, converged = {}, iterations = {}\n", records.size(),
                                 model.fit.converged, model.fit.iterations);
        std::cout << fmt::format("intercept {:.5f}, priors {:.5f}, misdemeanor {:.5f}, "
                                 "age<25 {:.5f}, age>45 {:.5f}\n",
                                 b[0], b[1], b[2], b[3], b[4]);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
