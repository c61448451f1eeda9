#include "ceda/dataset.hpp"

#include "ceda/error.hpp"

#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

namespace ceda {

Dataset::Dataset(std::vector<SurvivalRecord> records,
                 std::vector<std::string> feature_names,
                 std::vector<FeatureKind> feature_kinds)
    : records_(std::move(records)),
      feature_names_(std::move(feature_names)),
      feature_kinds_(std::move(feature_kinds)) {
    if (feature_kinds_.empty()) {
        feature_kinds_.assign(feature_names_.size(), FeatureKind::continuous);
    }
    if (feature_kinds_.size() != feature_names_.size()) {
        throw DomainError("feature kinds and names differ in length");
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names_) {
        if (!seen.insert(name).second) {
            throw DomainError(fmt::format("duplicate feature name '{}'", name));
        }
    }
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (!std::isfinite(r.y) || r.y < 0.0) {
            throw DomainError(fmt::format("record {} ('{}'): time must be finite and >= 0", i, r.id));
        }
        if (r.delta != 0 && r.delta != 1) {
            throw DomainError(fmt::format("record {} ('{}'): status must be 0 or 1", i, r.id));
        }
        if (r.covariates.size() != feature_names_.size()) {
            throw DomainError(fmt::format("record {} ('{}'): expected {} covariates, got {}", i, r.id,
                                          feature_names_.size(), r.covariates.size()));
        }
        n_uncensored_ += static_cast<std::size_t>(r.delta);
    }
}

double Dataset::censoring_rate() const noexcept {
    return empty() ? 0.0 : static_cast<double>(n_censored()) / static_cast<double>(size());
}

std::optional<std::size_t> Dataset::find_feature(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names_.size(); ++i) {
        if (feature_names_[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t Dataset::feature_index(const std::string& name) const {
    if (auto idx = find_feature(name)) return *idx;
    throw ConfigError(fmt::format("unknown feature '{}'", name));
}

std::vector<double> Dataset::feature_column(std::size_t feature) const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.covariates.at(feature));
    return out;
}

std::vector<double> Dataset::times() const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.y);
    return out;
}

std::vector<int> Dataset::statuses() const {
    std::vector<int> out;
    out.reserve(records_.size());
    for (const auto& r : records_) out.push_back(r.delta);
    return out;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<SurvivalRecord> picked;
    picked.reserve(indices.size());
    for (auto i : indices) picked.push_back(records_.at(i));
    return Dataset(std::move(picked), feature_names_, feature_kinds_);
}

}  // namespace ceda
