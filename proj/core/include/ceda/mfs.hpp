#pragma once

#include "ceda/binning.hpp"
#include "ceda/contingency.hpp"
#include "ceda/dataset.hpp"
#include "ceda/redistribution.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ceda {

// One evaluated feature-set against the response.
struct AssociationRecord {
    std::vector<std::string> features;
    std::vector<std::size_t> feature_indices;  // into the FeatureCodes list
    double ce = 0.0;        // H[Y|A]
    double ce_drop = 0.0;   // H[Y] - H[Y|A]
    double sce_drop = 0.0;  // ce_drop minus the best proper-subset ce_drop
    // I[A;B|Y] - I[A;B]; for triplets A is the best sub-pair, B the rest.
    std::optional<double> ecological;
    bool ecological_flag = false;
    bool interacting = false;
    std::optional<double> reliability_p;
    int levels = 0;  // observed composite categories

    std::string name() const;  // "V2_V3"
};

struct MfsReport {
    int order = 1;
    std::vector<AssociationRecord> records;  // ascending by ce
    double h_response = 0.0;
    std::string label;
    std::size_t n = 0;
    std::size_t n_uncensored = 0;
    std::vector<std::string> warnings;
};

struct MfsOptions {
    int max_order = 3;
    double interacting_factor = 3.0;
    double ecological_tolerance = 1e-12;
    // Reliability nulls for the best `reliability_top` records of each order
    // (0 disables). Pairs use their dominant member as anchor, triplets
    // their best sub-pair.
    std::size_t reliability_top = 0;
    int reliability_reps = 200;
    int noise_bins = 4;
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

// Evaluates every feature-set of size 1..max_order. `codes` are aligned to
// the records of the dataset `binned` was built from. Throws DomainError when
// max_order is outside 1..3.
std::vector<MfsReport> run_mfs(const BinnedWeights& binned, std::span<const FeatureCodes> codes,
                               const MfsOptions& options, const std::string& label = "all");

// Conditional entropy H[Y|fused(members)] on pre-grouped weights.
double feature_set_ce(const BinnedWeights& binned, std::span<const FeatureCodes> members);

// Empirical distribution of H[Y|(V0, anchor)] over synthetic U[0,1] noise
// features V0 binned into `noise_bins` equal-width categories.
struct ReliabilityNull {
    std::vector<double> null_ce;

    // Fraction of null CEs <= observed (small = significant).
    double p_value(double ce_observed) const;
};

ReliabilityNull reliability_null(const BinnedWeights& binned, std::span<const FeatureCodes> anchor,
                                 int noise_bins, int n_rep, std::uint64_t seed, unsigned workers = 0);

struct SubCollection {
    int category = 0;        // 0-based code of the split feature
    std::string label;       // "V9=1"
    std::vector<std::size_t> indices;  // parent record indices
    Dataset data;
};

struct Subdivision {
    std::string feature;
    std::vector<SubCollection> parts;
    std::vector<std::string> notices;
};

// Partitions records by the categories of one coded feature. Empty
// categories are omitted with a notice.
Subdivision subdivide(const Dataset& dataset, const FeatureCodes& feature);

// Codes of the parent restricted to one sub-collection's records.
std::vector<FeatureCodes> restrict_codes(std::span<const FeatureCodes> codes, std::span<const std::size_t> indices);

struct MceEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    double mce = 0.0;
};

struct MceResult {
    std::vector<std::string> names;
    Eigen::MatrixXd matrix;  // symmetric, zero diagonal
    std::vector<MceEdge> edges;  // pairs with mce < threshold
};

// MCE(A,B) = max(H[A|B]/H[A], H[B|A]/H[B]) on the plain A-vs-B table; 1 when
// either feature has zero entropy.
MceResult mce_matrix(std::span<const FeatureCodes> codes, double threshold = 0.97);

struct ExpansionDot {
    std::string series;       // "V7" or "V7+V6"
    std::string category;     // "3" or "(3,2)"
    std::vector<int> tuple;   // 0-based codes of base then extension members
    double ce = 0.0;
    double rescaled_ce = 0.0; // ce / H[Y]; 0 when H[Y] = 0
    double mass = 0.0;
    int dominant_bin = 0;     // response bin carrying the most mass
};

struct CeExpansion {
    std::string base;
    std::vector<std::string> extension;
    double h_response = 0.0;
    std::vector<std::string> response_labels;
    std::vector<ExpansionDot> base_dots;
    std::vector<ExpansionDot> composite_dots;
};

CeExpansion ce_expansion(const BinnedWeights& binned, const FeatureCodes& base,
                         std::span<const FeatureCodes> extension);

struct CodeId {
    std::vector<std::pair<std::string, std::string>> path;  // (feature, category label)
    std::string response;   // response bin label, e.g. "T1"
    double ce_at_leaf = 0.0;
    double mass = 0.0;

    std::string to_string() const;  // "V9-1-V7-3-V3-3-T1"
};

// One CodeId per composite cell with CE <= threshold and positive mass.
// `prefix` names the sub-collection, e.g. {("V9","1")}.
std::vector<CodeId> assign_code_ids(const CeExpansion& expansion, double threshold = 0.05,
                                    std::vector<std::pair<std::string, std::string>> prefix = {});

}  // namespace ceda
