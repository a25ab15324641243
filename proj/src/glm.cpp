#include "fairaudit/glm.hpp"

#include "fairaudit/errors.hpp"

#include <cmath>

namespace fairaudit::glm {

double expit(double x)
{
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double logit(double p)
{
    return std::log(p / (1.0 - p));
}

namespace {

// log(1 + exp(x)) without overflow.
double softplus(double x)
{
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double deviance(const Eigen::VectorXd& eta, std::span<const std::uint8_t> y)
{
    double sum = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i)
        sum += softplus(eta[i]) - (y[i] ? eta[i] : 0.0);
    return 2.0 * sum;
}

void check_full_rank(const Eigen::MatrixXd& design)
{
    Eigen::MatrixXd scaled = design;
    for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
        double norm = scaled.col(j).norm();
        if (norm == 0.0)
            throw RankDeficiencyError("design column " + std::to_string(j) + " is all zero");
        scaled.col(j) /= norm;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    qr.setThreshold(1e-10);
    if (qr.rank() < design.cols())
        throw RankDeficiencyError("design matrix has rank " + std::to_string(qr.rank())
                                  + " < " + std::to_string(design.cols()) + " columns");
}

} // namespace

LogisticFit fit_logistic(const Eigen::MatrixXd& design, std::span<const std::uint8_t> labels)
{
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    if (static_cast<std::size_t>(n) != labels.size())
        throw ShapeError("design has " + std::to_string(n) + " rows but "
                         + std::to_string(labels.size()) + " labels");
    if (p == 0)
        throw ShapeError("design has no columns");
    if (!design.allFinite())
        throw ValidationError("design contains non-finite entries");

    std::size_t ones = 0;
    for (auto y : labels)
        ones += y ? 1 : 0;
    if (ones == 0 || ones == labels.size())
        throw DegenerateLabelsError("logistic fit needs both label classes");
    if (n < p)
        throw RankDeficiencyError("fewer observations than coefficients");
    check_full_rank(design);

    LogisticFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd eta = Eigen::VectorXd::Zero(n);
    double dev = deviance(eta, labels);
    fit.deviance_trace.push_back(dev);

    Eigen::VectorXd residual(n);
    Eigen::VectorXd weight(n);
    for (int iter = 1; iter <= kMaxIterations; ++iter) {
        for (Eigen::Index i = 0; i < n; ++i) {
            double mu = expit(eta[i]);
            residual[i] = (labels[i] ? 1.0 : 0.0) - mu;
            weight[i] = std::max(mu * (1.0 - mu), kMinWeight);
        }
        Eigen::MatrixXd info = design.transpose() * weight.asDiagonal() * design;
        Eigen::VectorXd score = design.transpose() * residual;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
        if (ldlt.info() != Eigen::Success)
            throw RankDeficiencyError("weighted normal equations are singular");
        Eigen::VectorXd step = ldlt.solve(score);
        if (!step.allFinite())
            break;

        // Newton steps can overshoot; halve until the deviance stops rising.
        Eigen::VectorXd candidate = fit.coefficients + step;
        Eigen::VectorXd cand_eta = design * candidate;
        double cand_dev = deviance(cand_eta, labels);
        for (int halving = 0; halving < 30 && cand_dev > dev; ++halving) {
            step *= 0.5;
            candidate = fit.coefficients + step;
            cand_eta = design * candidate;
            cand_dev = deviance(cand_eta, labels);
        }
        if (cand_dev > dev)
            break;

        double previous = dev;
        fit.coefficients = std::move(candidate);
        eta = std::move(cand_eta);
        dev = cand_dev;
        fit.iterations = iter;
        fit.deviance_trace.push_back(dev);

        if (std::abs(dev - previous) / (std::abs(dev) + 0.1) < kTolerance) {
            fit.converged = true;
            break;
        }
    }

    fit.deviance = dev;
    fit.separation_flag = (fit.coefficients.array().abs() > kDivergenceBound).any();
    return fit;
}

std::vector<double> predict_prob(const LogisticFit& fit, const Eigen::MatrixXd& design)
{
    if (design.cols() != fit.coefficients.size())
        throw ShapeError("design has " + std::to_string(design.cols()) + " columns but fit has "
                         + std::to_string(fit.coefficients.size()) + " coefficients");
    Eigen::VectorXd eta = design * fit.coefficients;
    std::vector<double> out(static_cast<std::size_t>(eta.size()));
    for (Eigen::Index i = 0; i < eta.size(); ++i)
        out[static_cast<std::size_t>(i)] = expit(eta[i]);
    return out;
}

Eigen::MatrixXd with_intercept(std::span<const double> covariate)
{
    Eigen::MatrixXd x(static_cast<Eigen::Index>(covariate.size()), 2);
    for (std::size_t i = 0; i < covariate.size(); ++i) {
        x(static_cast<Eigen::Index>(i), 0) = 1.0;
        x(static_cast<Eigen::Index>(i), 1) = covariate[i];
    }
    return x;
}

} // namespace fairaudit::glm
