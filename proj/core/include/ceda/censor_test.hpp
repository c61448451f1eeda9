#pragma once

#include "ceda/binning.hpp"
#include "ceda/contingency.hpp"
#include "ceda/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ceda {

struct CensorTestOptions {
    int n_sim = 10000;
    std::uint64_t seed = 1;
    // true: draw round(mass) subjects per row; false: floor(mass) plus one
    // more with probability equal to the fractional part.
    bool round_row_mass = true;
    // true: 2 min(P[X <= obs], P[X >= obs]); false: P[X <= obs].
    bool two_sided = true;
    double alpha = 0.05;
    unsigned workers = 0;
};

// One row (or column) of the summed table against its multinomial null.
struct AxisSummary {
    std::string label;
    double mass = 0.0;
    bool skipped = false;  // zero mass or draw size 0
    double observed = 0.0;  // rescaled CE of the observed profile
    std::vector<double> null_samples;  // profile drawn from the opposing marginal
    std::vector<double> alt_samples;   // profile drawn from the observed proportions
    double p_value = 1.0;
    double min_error_sum = 1.0;  // min over thresholds of type I + type II
};

struct CensorTestResult {
    ContingencyTable table;  // rows C-bins, columns T-bins
    std::optional<ContingencyTable> from_censored;
    std::optional<ContingencyTable> from_events;
    double h_col_marginal = 0.0;
    double h_row_marginal = 0.0;
    std::vector<double> row_rescaled_ces;  // NaN where skipped
    std::vector<double> col_rescaled_ces;
    std::vector<AxisSummary> rows;
    std::vector<AxisSummary> cols;
    std::vector<std::string> notices;
    double alpha = 0.05;
    // Heuristic verdict: every non-skipped p-value exceeds alpha.
    bool not_rejected = true;
};

// Works on a summed C-vs-T table supplied directly.
CensorTestResult run_censor_test(const ContingencyTable& summed, const CensorTestOptions& options = {});

// Builds the table with censor_cross_table first. Throws DomainError unless
// the dataset has both censored and uncensored records.
CensorTestResult run_censor_test(const Dataset& dataset, const BinningScheme& time_scheme,
                                 const CensorTestOptions& options = {});

// sup |F_a - F_b| between two empirical distributions.
double ks_distance(std::span<const double> a, std::span<const double> b);

// Counts of a multinomial(size, p) draw via sequential binomials.
std::vector<int> draw_multinomial(int size, std::span<const double> p, std::uint64_t seed);

}  // namespace ceda
