#include "ceda/simgen.hpp"

#include "ceda/error.hpp"
#include "ceda/parallel.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace ceda {

namespace {

double exp_draw(Rng& rng) { return -std::log1p(-uniform01(rng)); }

// Event time and a unit-rate exponential for the censoring clock of record i.
struct Draw {
    std::vector<double> v;
    double t = 0.0;
    double e = 0.0;
};

Draw draw_record(const SimConfig& config, std::uint64_t seed, std::size_t i) {
    auto rng = make_rng(seed, i);
    Draw d;
    d.v.resize(config.n_features);
    for (auto& x : d.v) x = uniform01(rng);
    const double u = exp_draw(rng) / config.u_rate;
    d.e = exp_draw(rng);
    const double eta = config.zero_exponent ? 0.0 : exhaustion_exponent(d.v);
    d.t = event_time(u, eta, config.shape);
    return d;
}

std::vector<double> pilot_ratios(const SimConfig& config, const CalibrationOptions& options) {
    // C < T  <=>  e / rate < t  <=>  e / t < rate.
    std::vector<double> r(options.pilot_n);
    parallel_for(r.size(), config.workers, [&](std::size_t i) {
        const auto d = draw_record(config, options.seed, i);
        r[i] = d.e / d.t;
    });
    return r;
}

double fraction_below(const std::vector<double>& ratios, double rate) {
    std::size_t c = 0;
    for (double x : ratios) c += x < rate ? 1 : 0;
    return static_cast<double>(c) / static_cast<double>(ratios.size());
}

}  // namespace

void validate(const SimConfig& config) {
    if (config.n == 0) throw DomainError("simulation: n must be positive");
    if (!(config.shape > 0.0) || !std::isfinite(config.shape)) throw DomainError("simulation: shape must be > 0");
    if (!(config.u_rate > 0.0) || !std::isfinite(config.u_rate)) throw DomainError("simulation: u_rate must be > 0");
    if (!(config.censor_target >= 0.0 && config.censor_target < 1.0)) {
        throw DomainError("simulation: censor target must lie in [0, 1)");
    }
    if (config.censor_rate && !(*config.censor_rate >= 0.0 && std::isfinite(*config.censor_rate))) {
        throw DomainError("simulation: censor rate must be finite and >= 0");
    }
    if (config.n_features < 7) throw DomainError("simulation: at least 7 features are required");
}

double exhaustion_exponent(std::span<const double> v) {
    if (v.size() < 7) throw DomainError("exhaustion_exponent: needs V1..V7");
    return v[0] + std::sin(2.0 * std::numbers::pi * (v[1] + v[2])) + v[6] * v[6];
}

double event_time(double u, double eta, double shape) { return std::pow(u * std::exp(-eta), 1.0 / shape); }

double event_time_quadrature(double u, const std::function<double(double)>& eta_of_t, double shape, double rel_tol) {
    if (!(u >= 0.0)) throw DomainError("event_time_quadrature: u must be >= 0");
    if (u == 0.0) return 0.0;
    // tanh-sinh copes with the t^(k-1) endpoint singularity for any shape.
    boost::math::quadrature::tanh_sinh<double> rule;
    auto integral = [&](double t) {
        return rule.integrate([&](double v) { return std::exp(eta_of_t(v)) * shape * std::pow(v, shape - 1.0); },
                              0.0, t);
    };
    double lo = 0.0;
    double hi = 1.0;
    int guard = 0;
    while (integral(hi) < u) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 200) throw DomainError("event_time_quadrature: cumulative hazard does not reach u");
    }
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        (integral(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double censoring_fraction(const SimConfig& config, double rate, const CalibrationOptions& options) {
    validate(config);
    return fraction_below(pilot_ratios(config, options), rate);
}

double calibrate_censor_rate(const SimConfig& config, double target, const CalibrationOptions& options) {
    validate(config);
    if (!(target >= 0.005 && target < 1.0)) {
        throw DomainError("calibrate_censor_rate: target must lie in [0.005, 1); smaller targets need rate -> 0");
    }
    if (options.pilot_n == 0) throw DomainError("calibrate_censor_rate: pilot_n must be positive");
    const auto ratios = pilot_ratios(config, options);
    double lo = 0.0;
    double hi = 1.0;
    int widen = 0;
    while (fraction_below(ratios, hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (++widen > 200) throw DomainError("calibrate_censor_rate: could not bracket the target");
    }
    for (int it = 0; it < options.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = fraction_below(ratios, mid);
        if (std::abs(f - target) <= options.tol / 4.0) return mid;
        (f < target ? lo : hi) = mid;
    }
    const double rate = 0.5 * (lo + hi);
    if (std::abs(fraction_below(ratios, rate) - target) > options.tol) {
        throw DomainError("calibrate_censor_rate: no convergence within max_iter");
    }
    return rate;
}

SimulatedData generate(const SimConfig& config) {
    validate(config);
    double rate = 0.0;
    if (config.censor_rate) {
        rate = *config.censor_rate;
    } else if (config.censor_target > 0.0) {
        rate = calibrate_censor_rate(config, config.censor_target);
    }

    SimulatedData out;
    out.censor_rate = rate;
    out.true_time.resize(config.n);
    out.censor_time.resize(config.n);
    std::vector<SurvivalRecord> records(config.n);
    parallel_for(config.n, config.workers, [&](std::size_t i) {
        auto d = draw_record(config, config.seed, i);
        const double c = rate > 0.0 ? d.e / rate : std::numeric_limits<double>::infinity();
        out.true_time[i] = d.t;
        out.censor_time[i] = c;
        auto& r = records[i];
        r.id = std::to_string(i + 1);
        r.delta = d.t <= c ? 1 : 0;
        r.y = r.delta ? d.t : c;
        r.covariates = std::move(d.v);
    });
    std::vector<std::string> names;
    for (std::size_t j = 0; j < config.n_features; ++j) names.push_back("V" + std::to_string(j + 1));
    out.data = Dataset(std::move(records), std::move(names));
    return out;
}

}  // namespace ceda
