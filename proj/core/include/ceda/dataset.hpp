#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ceda {

enum class FeatureKind { continuous, categorical };

// One subject: observed time y = min(T, C), status delta = 1[T <= C].
struct SurvivalRecord {
    std::string id;
    double y = 0.0;
    int delta = 0;
    std::vector<double> covariates;
};

// Immutable collection of survival records sharing one feature layout.
class Dataset {
public:
    Dataset() = default;

    // Validates every record (finite y >= 0, delta in {0,1}, covariate count)
    // and that feature names are unique. Throws DomainError otherwise.
    Dataset(std::vector<SurvivalRecord> records,
            std::vector<std::string> feature_names,
            std::vector<FeatureKind> feature_kinds = {});

    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    std::size_t n_uncensored() const noexcept { return n_uncensored_; }
    std::size_t n_censored() const noexcept { return size() - n_uncensored_; }
    double censoring_rate() const noexcept;

    std::span<const SurvivalRecord> records() const noexcept { return records_; }
    const SurvivalRecord& operator[](std::size_t i) const { return records_[i]; }

    std::size_t feature_count() const noexcept { return feature_names_.size(); }
    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
    const std::vector<FeatureKind>& feature_kinds() const noexcept { return feature_kinds_; }

    std::optional<std::size_t> find_feature(const std::string& name) const;
    // Throws ConfigError when the feature does not exist.
    std::size_t feature_index(const std::string& name) const;

    std::vector<double> feature_column(std::size_t feature) const;
    std::vector<double> times() const;
    std::vector<int> statuses() const;

    // Records at `indices`, in the given order, with the same feature layout.
    Dataset subset(std::span<const std::size_t> indices) const;

private:
    std::vector<SurvivalRecord> records_;
    std::vector<std::string> feature_names_;
    std::vector<FeatureKind> feature_kinds_;
    std::size_t n_uncensored_ = 0;
};

}  // namespace ceda
