#pragma once

#include "ceda/dataset.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ceda {

// Ordinal categories over the real line. Bins are [e_i, e_{i+1}) except the
// last, which is closed on the right, so the largest edge is always assigned.
class BinningScheme {
public:
    BinningScheme() = default;
    // Throws DomainError unless edges are strictly increasing with >= 2 bins.
    explicit BinningScheme(std::vector<double> edges, std::vector<std::string> labels = {});

    std::size_t bin_count() const noexcept { return edges_.empty() ? 0 : edges_.size() - 1; }
    const std::vector<double>& edges() const noexcept { return edges_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    // 0-based bin of v. Values outside [front, back] clamp to the terminal bin
    // and set *clamped when provided. NaN maps to bin 0 and counts as clamped.
    std::size_t bin_of(double v, bool* clamped = nullptr) const;

private:
    std::vector<double> edges_;
    std::vector<std::string> labels_;
};

// k equal-width bins over [min(values), max(values)].
BinningScheme equal_width_bins(std::span<const double> values, std::size_t k);

// Edges placed at uncensored times so that each bin carries as close to 1/k of
// the Kaplan-Meier mass as the step function allows; outer edges are +-inf.
BinningScheme km_quantile_bins(const Dataset& dataset, std::size_t k);

struct Categorized {
    std::vector<int> codes;  // 0-based bin per value
    std::size_t clamped = 0;
};

Categorized categorize(std::span<const double> values, const BinningScheme& scheme);

// 0-based category codes for one feature, ready for fusion and tabulation.
struct FeatureCodes {
    std::string name;
    std::vector<int> codes;
    int levels = 0;
    std::vector<std::string> level_labels;  // 1-based ordinal names by default
    std::size_t clamped = 0;
};

// Maps raw covariate values of one feature to ordinal codes. Continuous
// features use a BinningScheme; categorical features use their distinct
// observed values (sorted), with unseen values clamped to the nearest level.
class FeatureCoder {
public:
    static FeatureCoder binned(std::string name, BinningScheme scheme);
    static FeatureCoder distinct_levels(std::string name, std::vector<double> levels);

    const std::string& name() const noexcept { return name_; }
    int level_count() const noexcept;
    const std::optional<BinningScheme>& scheme() const noexcept { return scheme_; }
    const std::vector<double>& levels() const noexcept { return levels_; }

    FeatureCodes encode(std::span<const double> values) const;

private:
    std::string name_;
    std::optional<BinningScheme> scheme_;
    std::vector<double> levels_;
};

struct CovariateBinning {
    std::size_t bins = 4;
    std::map<std::string, std::vector<double>> explicit_edges;
};

// One coder per dataset feature. Continuous features get equal-width bins over
// their observed range unless explicit edges are supplied; categorical ones
// keep their distinct values.
std::vector<FeatureCoder> build_coders(const Dataset& dataset, const CovariateBinning& options);

std::vector<FeatureCodes> encode_features(const Dataset& dataset, std::span<const FeatureCoder> coders);

enum class TimeBinMethod { equal_width, km_quantile, explicit_edges };

struct TimeBinning {
    TimeBinMethod method = TimeBinMethod::equal_width;
    std::size_t bins = 10;
    std::vector<double> edges;  // used by explicit_edges
};

// Response-time scheme. equal_width spans the uncensored times after the
// largest-censored promotion.
BinningScheme make_time_scheme(const Dataset& dataset, const TimeBinning& options);

}  // namespace ceda
