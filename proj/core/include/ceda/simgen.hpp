#pragma once

#include "ceda/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ceda {

// Synthetic survival data from the reserve-exhaustion model
//   U = integral_0^T exp(eta) lambda0(t) dt,  lambda0(t) = k t^(k-1),
// with eta = V1 + sin(2 pi (V2 + V3)) + V7^2, V1..Vm iid U[0,1],
// U ~ Exp(u_rate) and censoring C ~ Exp(censor rate).
struct SimConfig {
    std::size_t n = 10000;
    double shape = 1.5;   // k
    double u_rate = 1.5;
    double censor_target = 0.1;  // used when censor_rate is unset
    std::optional<double> censor_rate;
    std::size_t n_features = 10;  // >= 7
    std::uint64_t seed = 1;
    bool zero_exponent = false;  // force eta = 0
    unsigned workers = 0;
};

struct SimulatedData {
    Dataset data;  // features V1..Vm, ids "1".."n"
    std::vector<double> true_time;
    std::vector<double> censor_time;  // +inf when uncensored by construction
    double censor_rate = 0.0;         // 0 means no censoring
};

// Throws DomainError when the configuration is invalid.
void validate(const SimConfig& config);

double exhaustion_exponent(std::span<const double> v);

// T = (u e^-eta)^(1/k).
double event_time(double u, double eta, double shape);

// Solves integral_0^T exp(eta(t)) k t^(k-1) dt = u numerically (Simpson's rule
// with bracketing bisection). Agrees with event_time for constant eta.
double event_time_quadrature(double u, const std::function<double(double)>& eta_of_t, double shape,
                             double rel_tol = 1e-10);

// Uses config.censor_rate when set, otherwise calibrates it to
// config.censor_target (a target of 0 disables censoring).
SimulatedData generate(const SimConfig& config);

struct CalibrationOptions {
    double tol = 0.002;
    std::size_t pilot_n = 200000;
    std::uint64_t seed = 20240601;
    int max_iter = 200;
};

// Exponential censoring rate whose pilot censoring fraction is within tol of
// target. Throws DomainError for targets outside [0.005, 1).
double calibrate_censor_rate(const SimConfig& config, double target, const CalibrationOptions& options = {});

// Pilot censoring fraction at a given rate (common random numbers).
double censoring_fraction(const SimConfig& config, double rate, const CalibrationOptions& options = {});

}  // namespace ceda
