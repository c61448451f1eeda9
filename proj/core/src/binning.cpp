#include "ceda/binning.hpp"

#include "ceda/error.hpp"
#include "ceda/redistribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace ceda {

BinningScheme::BinningScheme(std::vector<double> edges, std::vector<std::string> labels)
    : edges_(std::move(edges)), labels_(std::move(labels)) {
    if (edges_.size() < 3) {
        throw DomainError(fmt::format("a binning scheme needs at least 2 bins, got {} edges", edges_.size()));
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (std::isnan(edges_[i])) throw DomainError("bin edges must not be NaN");
        if (i > 0 && !(edges_[i] > edges_[i - 1])) {
            throw DomainError("bin edges must be strictly increasing");
        }
    }
    if (labels_.empty()) {
        for (std::size_t b = 0; b < bin_count(); ++b) labels_.push_back(std::to_string(b + 1));
    } else if (labels_.size() != bin_count()) {
        throw DomainError("label count must equal bin count");
    }
}

std::size_t BinningScheme::bin_of(double v, bool* clamped) const {
    const std::size_t k = bin_count();
    bool out = false;
    std::size_t bin = 0;
    if (std::isnan(v) || v < edges_.front()) {
        out = true;
        bin = 0;
    } else if (v >= edges_.back()) {
        out = v > edges_.back();
        bin = k - 1;
    } else {
        // First edge strictly greater than v closes v's bin.
        auto it = std::upper_bound(edges_.begin(), edges_.end(), v);
        bin = static_cast<std::size_t>(it - edges_.begin()) - 1;
    }
    if (clamped) *clamped = out;
    return bin;
}

BinningScheme equal_width_bins(std::span<const double> values, std::size_t k) {
    if (k < 2) throw DomainError("equal_width_bins needs k >= 2");
    if (values.empty()) throw DomainError("equal_width_bins needs values");
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("equal_width_bins needs finite values");
    if (!(lo < hi)) throw DomainError("degenerate range: all values are equal");
    std::vector<double> edges(k + 1);
    const double width = (hi - lo) / static_cast<double>(k);
    for (std::size_t i = 0; i <= k; ++i) edges[i] = lo + width * static_cast<double>(i);
    edges.back() = hi;
    return BinningScheme(std::move(edges));
}

BinningScheme km_quantile_bins(const Dataset& dataset, std::size_t k) {
    if (k < 2) throw DomainError("km_quantile_bins needs k >= 2");
    const auto km = km_estimate(dataset);
    // Distinct jump times with cumulative mass F = 1 - S.
    const auto& times = km.jump_times;
    const std::size_t m = times.size();
    if (m < k) {
        throw DomainError(fmt::format("infeasible binning: {} distinct uncensored times for {} bins", m, k));
    }
    std::vector<double> cdf(m);
    for (std::size_t l = 0; l < m; ++l) cdf[l] = 1.0 - km.values[l];

    // cut[j] = index l of the last jump time in bin j (j = 0..k-2).
    std::vector<std::size_t> cut;
    std::size_t next_min = 0;
    for (std::size_t j = 1; j < k; ++j) {
        const double target = static_cast<double>(j) / static_cast<double>(k);
        // Leave room for the remaining k - j bins.
        const std::size_t max_l = m - 1 - (k - j);
        std::size_t best = next_min;
        double best_gap = std::abs(cdf[next_min] - target);
        for (std::size_t l = next_min + 1; l <= max_l; ++l) {
            const double gap = std::abs(cdf[l] - target);
            if (gap < best_gap) {
                best_gap = gap;
                best = l;
            }
            if (cdf[l] > target) break;
        }
        cut.push_back(best);
        next_min = best + 1;
    }
    std::vector<double> edges;
    edges.push_back(-std::numeric_limits<double>::infinity());
    for (auto l : cut) edges.push_back(times[l + 1]);
    edges.push_back(std::numeric_limits<double>::infinity());
    return BinningScheme(std::move(edges));
}

Categorized categorize(std::span<const double> values, const BinningScheme& scheme) {
    Categorized out;
    out.codes.reserve(values.size());
    for (double v : values) {
        bool clamped = false;
        out.codes.push_back(static_cast<int>(scheme.bin_of(v, &clamped)));
        out.clamped += clamped ? 1 : 0;
    }
    return out;
}

FeatureCoder FeatureCoder::binned(std::string name, BinningScheme scheme) {
    FeatureCoder c;
    c.name_ = std::move(name);
    c.scheme_ = std::move(scheme);
    return c;
}

FeatureCoder FeatureCoder::distinct_levels(std::string name, std::vector<double> levels) {
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (levels.empty()) throw DomainError("categorical feature '" + name + "' has no levels");
    FeatureCoder c;
    c.name_ = std::move(name);
    c.levels_ = std::move(levels);
    return c;
}

int FeatureCoder::level_count() const noexcept {
    return scheme_ ? static_cast<int>(scheme_->bin_count()) : static_cast<int>(levels_.size());
}

FeatureCodes FeatureCoder::encode(std::span<const double> values) const {
    FeatureCodes out;
    out.name = name_;
    out.levels = level_count();
    if (scheme_) {
        auto cat = categorize(values, *scheme_);
        out.codes = std::move(cat.codes);
        out.clamped = cat.clamped;
        out.level_labels = scheme_->labels();
        return out;
    }
    out.codes.reserve(values.size());
    for (double v : values) {
        auto it = std::lower_bound(levels_.begin(), levels_.end(), v);
        std::size_t idx;
        if (it != levels_.end() && *it == v) {
            idx = static_cast<std::size_t>(it - levels_.begin());
        } else {
            ++out.clamped;
            if (it == levels_.begin()) {
                idx = 0;
            } else if (it == levels_.end()) {
                idx = levels_.size() - 1;
            } else {
                idx = static_cast<std::size_t>(it - levels_.begin());
                if (v - *(it - 1) <= *it - v) --idx;
            }
        }
        out.codes.push_back(static_cast<int>(idx));
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) out.level_labels.push_back(std::to_string(i + 1));
    return out;
}

std::vector<FeatureCoder> build_coders(const Dataset& dataset, const CovariateBinning& options) {
    std::vector<FeatureCoder> coders;
    for (std::size_t f = 0; f < dataset.feature_count(); ++f) {
        const auto& name = dataset.feature_names()[f];
        const auto column = dataset.feature_column(f);
        if (auto it = options.explicit_edges.find(name); it != options.explicit_edges.end()) {
            coders.push_back(FeatureCoder::binned(name, BinningScheme(it->second)));
        } else if (dataset.feature_kinds()[f] == FeatureKind::categorical) {
            coders.push_back(FeatureCoder::distinct_levels(name, column));
        } else {
            coders.push_back(FeatureCoder::binned(name, equal_width_bins(column, options.bins)));
        }
    }
    return coders;
}

std::vector<FeatureCodes> encode_features(const Dataset& dataset, std::span<const FeatureCoder> coders) {
    std::vector<FeatureCodes> out;
    out.reserve(coders.size());
    for (const auto& coder : coders) {
        out.push_back(coder.encode(dataset.feature_column(dataset.feature_index(coder.name()))));
    }
    return out;
}

BinningScheme make_time_scheme(const Dataset& dataset, const TimeBinning& options) {
    switch (options.method) {
        case TimeBinMethod::explicit_edges:
            return BinningScheme(options.edges);
        case TimeBinMethod::km_quantile:
            return km_quantile_bins(dataset, options.bins);
        case TimeBinMethod::equal_width: {
            const auto sample = order_sample(dataset);
            std::vector<double> event_times;
            for (std::size_t p = 0; p < sample.size(); ++p) {
                if (sample.delta[p] == 1) event_times.push_back(sample.y[p]);
            }
            return equal_width_bins(event_times, options.bins);
        }
    }
    throw DomainError("unknown time binning method");
}

}  // namespace ceda
