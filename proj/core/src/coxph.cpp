#include "ceda/coxph.hpp"

#include "ceda/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ceda {

namespace {

void check_inputs(const Eigen::MatrixXd& x, std::span<const double> y, std::span<const int> delta) {
    const auto n = static_cast<std::size_t>(x.rows());
    if (y.size() != n || delta.size() != n) throw DomainError("cox: covariates, times and statuses differ in length");
    if (!x.allFinite()) throw DomainError("cox: covariates must be finite");
    if (std::none_of(delta.begin(), delta.end(), [](int d) { return d == 1; })) throw DomainError("cox: no events");
}

}  // namespace

PartialLikelihood partial_likelihood(const Eigen::MatrixXd& x, std::span<const double> y, std::span<const int> delta,
                                     const Eigen::VectorXd& beta) {
    check_inputs(x, y, delta);
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    if (beta.size() != p) throw DomainError("cox: beta has the wrong length");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    // Descending time so risk sets grow as we walk.
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return y[static_cast<std::size_t>(a)] > y[static_cast<std::size_t>(b)]; });

    const Eigen::VectorXd eta = x * beta;
    PartialLikelihood out;
    out.gradient = Eigen::VectorXd::Zero(p);
    out.information = Eigen::MatrixXd::Zero(p, p);

    double s0 = 0.0;
    Eigen::VectorXd s1 = Eigen::VectorXd::Zero(p);
    Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(p, p);
    std::size_t i = 0;
    while (i < order.size()) {
        const double t = y[static_cast<std::size_t>(order[i])];
        std::size_t j = i;
        int events = 0;
        Eigen::VectorXd event_x = Eigen::VectorXd::Zero(p);
        double event_eta = 0.0;
        for (; j < order.size() && y[static_cast<std::size_t>(order[j])] == t; ++j) {
            const Eigen::Index r = order[j];
            const double w = std::exp(eta[r]);
            s0 += w;
            s1 += w * x.row(r).transpose();
            s2.noalias() += w * x.row(r).transpose() * x.row(r);
            if (delta[static_cast<std::size_t>(r)] == 1) {
                ++events;
                event_x += x.row(r).transpose();
                event_eta += eta[r];
            }
        }
        if (events > 0) {
            const Eigen::VectorXd mean = s1 / s0;
            out.value += event_eta - events * std::log(s0);
            out.gradient += event_x - events * mean;
            out.information += events * (s2 / s0 - mean * mean.transpose());
        }
        i = j;
    }
    return out;
}

Eigen::MatrixXd design_matrix(const Dataset& dataset, std::span<const std::string> features) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(dataset.size()), static_cast<Eigen::Index>(features.size()));
    for (std::size_t f = 0; f < features.size(); ++f) {
        const auto col = dataset.feature_column(dataset.feature_index(features[f]));
        for (std::size_t r = 0; r < col.size(); ++r) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) = col[r];
    }
    return x;
}

double partial_loglik(const Eigen::VectorXd& beta, const Dataset& dataset, std::span<const std::string> features,
                      Eigen::VectorXd* gradient) {
    const auto y = dataset.times();
    const auto d = dataset.statuses();
    auto pl = partial_likelihood(design_matrix(dataset, features), y, d, beta);
    if (gradient) *gradient = std::move(pl.gradient);
    return pl.value;
}

double wald_p_value(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

CoxFit fit_cox(const Eigen::MatrixXd& x_raw, std::span<const double> y, std::span<const int> delta,
               std::vector<std::string> names, const CoxOptions& options) {
    check_inputs(x_raw, y, delta);
    const Eigen::Index p = x_raw.cols();
    if (static_cast<Eigen::Index>(names.size()) != p) throw DomainError("cox: names do not match covariate count");

    // Centred covariates give the same likelihood in beta and better scaling.
    const Eigen::RowVectorXd centre = x_raw.colwise().mean();
    const Eigen::MatrixXd x = x_raw.rowwise() - centre;

    CoxFit fit;
    fit.features = std::move(names);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    fit.se = Eigen::VectorXd::Constant(p, nan);
    fit.wald_p = Eigen::VectorXd::Constant(p, nan);

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    auto pl = partial_likelihood(x, y, delta, beta);
    fit.loglik_null = pl.value;

    auto solve = [&](const Eigen::MatrixXd& info, const Eigen::VectorXd& g, bool& singular) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(info);
        const Eigen::VectorXd& lambda = eig.eigenvalues();
        const double cutoff = 1e-10 * lambda.cwiseAbs().maxCoeff();
        singular = false;
        Eigen::VectorXd inv = Eigen::VectorXd::Zero(p);
        for (Eigen::Index k = 0; k < p; ++k) {
            if (lambda[k] > cutoff) {
                inv[k] = 1.0 / lambda[k];
            } else {
                singular = true;
            }
        }
        return Eigen::VectorXd(eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose() * g);
    };

    // Directions that carry information at beta = 0 but lose it during the
    // fit mark a likelihood that keeps rising towards an infinite coefficient.
    const double null_scale = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(pl.information).eigenvalues().cwiseAbs().maxCoeff();
    auto rank_at = [&](const Eigen::MatrixXd& info, double scale) {
        const Eigen::VectorXd lambda = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(info).eigenvalues();
        return static_cast<Eigen::Index>((lambda.array() > 1e-10 * scale).count());
    };
    const Eigen::Index null_rank = rank_at(pl.information, null_scale);

    bool singular = false;
    for (fit.iterations = 0; fit.iterations < options.max_iter; ++fit.iterations) {
        const Eigen::VectorXd step = solve(pl.information, pl.gradient, singular);
        if (pl.gradient.lpNorm<Eigen::Infinity>() < options.grad_tol &&
            step.lpNorm<Eigen::Infinity>() < options.step_tol) {
            fit.converged = true;
            break;
        }
        double scale = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 40; ++halving) {
            const Eigen::VectorXd trial = beta + scale * step;
            auto next = partial_likelihood(x, y, delta, trial);
            if (std::isfinite(next.value) && next.value >= pl.value - 1e-12 * (1.0 + std::abs(pl.value))) {
                beta = trial;
                pl = std::move(next);
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if (beta.cwiseAbs().maxCoeff() > options.divergence) {
            fit.message = "coefficient divergence (monotone likelihood)";
            break;
        }
        if (!improved) {
            fit.converged = pl.gradient.lpNorm<Eigen::Infinity>() < options.grad_tol &&
                            step.lpNorm<Eigen::Infinity>() < options.step_tol;
            if (!fit.converged) fit.message = "step halving failed to improve the likelihood";
            break;
        }
    }
    if (!fit.converged && fit.message.empty()) {
        if (fit.iterations >= options.max_iter) {
            fit.message = "iteration limit reached";
        }
    }
    if (beta.cwiseAbs().maxCoeff() > options.divergence || rank_at(pl.information, null_scale) < null_rank) {
        fit.converged = false;
        if (fit.message.empty()) fit.message = "coefficient divergence (monotone likelihood)";
    }
    fit.beta = beta;
    fit.loglik = pl.value;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pl.information);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double cutoff = 1e-10 * lambda.cwiseAbs().maxCoeff();
    std::vector<bool> affected(static_cast<std::size_t>(p), false);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(p);
    for (Eigen::Index k = 0; k < p; ++k) {
        if (lambda[k] > cutoff) {
            inv[k] = 1.0 / lambda[k];
            continue;
        }
        singular = true;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (std::abs(eig.eigenvectors()(j, k)) > 1e-8) affected[static_cast<std::size_t>(j)] = true;
        }
    }
    fit.singular = singular;
    if (singular && fit.message.empty()) fit.message = "singular information matrix";
    if (fit.converged) {
        const Eigen::MatrixXd cov = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
        for (Eigen::Index j = 0; j < p; ++j) {
            if (affected[static_cast<std::size_t>(j)] || !(cov(j, j) > 0.0)) continue;
            fit.se[j] = std::sqrt(cov(j, j));
            fit.wald_p[j] = wald_p_value(beta[j] / fit.se[j]);
        }
    }
    return fit;
}

CoxFit fit_cox(const Dataset& dataset, std::span<const std::string> features, const CoxOptions& options) {
    if (features.empty()) throw DomainError("cox: no features");
    const auto y = dataset.times();
    const auto d = dataset.statuses();
    return fit_cox(design_matrix(dataset, features), y, d, std::vector<std::string>(features.begin(), features.end()),
                   options);
}

}  // namespace ceda
