#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace fairaudit::glm {

/// Convergence: |dev_t - dev_{t-1}| / (|dev_t| + 0.1) below this.
inline constexpr double kTolerance = 1e-8;
inline constexpr int kMaxIterations = 25;
/// IRLS weights p(1-p) are clamped below at this value.
inline constexpr double kMinWeight = 1e-10;
/// A coefficient beyond this magnitude (logit scale) marks quasi-separation.
inline constexpr double kDivergenceBound = 30.0;

struct LogisticFit {
    /// Intercept first when the design carries an intercept column.
    Eigen::VectorXd coefficients;
    bool converged = false;
    int iterations = 0;
    double deviance = 0.0;
    bool separation_flag = false;
    /// Deviance at the start (all-zero coefficients) and after every iteration.
    std::vector<double> deviance_trace;
};

double expit(double x);
double logit(double p);

/// Maximum-likelihood logistic regression by iteratively reweighted least
/// squares, starting from zero coefficients. Steps that would raise the
/// deviance are halved until they do not.
///
/// Throws DegenerateLabelsError when labels hold one class, RankDeficiencyError
/// when the weighted normal equations are singular, ShapeError on bad sizes.
/// Non-convergence is reported through `converged`, not thrown.
LogisticFit fit_logistic(const Eigen::MatrixXd& design, std::span<const std::uint8_t> labels);

/// expit(row . coefficients) for every row of `design`.
std::vector<double> predict_prob(const LogisticFit& fit, const Eigen::MatrixXd& design);

/// Design matrix with a leading column of ones followed by `covariates`.
Eigen::MatrixXd with_intercept(std::span<const double> covariate);

} // namespace fairaudit::glm
