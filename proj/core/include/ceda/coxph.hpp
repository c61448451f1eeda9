#pragma once

#include "ceda/dataset.hpp"

#include <Eigen/Core>

#include <span>
#include <string>
#include <vector>

namespace ceda {

// Breslow partial log-likelihood with its gradient and observed information.
struct PartialLikelihood {
    double value = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd information;
};

// x: n x p covariates. Throws DomainError when there are no events.
PartialLikelihood partial_likelihood(const Eigen::MatrixXd& x, std::span<const double> y, std::span<const int> delta,
                                     const Eigen::VectorXd& beta);

double partial_loglik(const Eigen::VectorXd& beta, const Dataset& dataset, std::span<const std::string> features,
                      Eigen::VectorXd* gradient = nullptr);

struct CoxOptions {
    int max_iter = 50;
    double grad_tol = 1e-8;
    double step_tol = 1e-6;  // Newton step must also vanish; a flat tail keeps it O(1)
    double divergence = 50.0;  // |beta| beyond this counts as monotone likelihood
};

struct CoxFit {
    std::vector<std::string> features;
    Eigen::VectorXd beta;
    Eigen::VectorXd se;      // NaN where unavailable
    Eigen::VectorXd wald_p;  // NaN where unavailable
    double loglik = 0.0;
    double loglik_null = 0.0;
    bool converged = false;
    bool singular = false;
    int iterations = 0;
    std::string message;
};

CoxFit fit_cox(const Eigen::MatrixXd& x, std::span<const double> y, std::span<const int> delta,
               std::vector<std::string> names, const CoxOptions& options = {});

// Features are read as numeric columns (categorical codes included).
CoxFit fit_cox(const Dataset& dataset, std::span<const std::string> features, const CoxOptions& options = {});

Eigen::MatrixXd design_matrix(const Dataset& dataset, std::span<const std::string> features);

// Two-sided normal p-value of a Wald statistic.
double wald_p_value(double z);

}  // namespace ceda
