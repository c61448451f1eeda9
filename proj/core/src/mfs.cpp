#include "ceda/mfs.hpp"

#include "ceda/entropy.hpp"
#include "ceda/error.hpp"
#include "ceda/parallel.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace ceda {

namespace {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k == 0 || k > n) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<FeatureCodes> pick(std::span<const FeatureCodes> codes, std::span<const std::size_t> which) {
    std::vector<FeatureCodes> out;
    out.reserve(which.size());
    for (auto i : which) out.push_back(codes[i]);
    return out;
}

// Dense ids for the projection of each composite tuple onto `positions`.
std::vector<int> project(const CompositeCodes& comp, std::span<const std::size_t> positions) {
    std::vector<std::vector<int>> keys;
    keys.reserve(comp.tuples.size());
    for (const auto& t : comp.tuples) {
        std::vector<int> key;
        for (auto p : positions) key.push_back(t[p]);
        keys.push_back(std::move(key));
    }
    auto distinct = keys;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<int> out;
    out.reserve(keys.size());
    for (const auto& key : keys) {
        out.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), key) - distinct.begin()));
    }
    return out;
}

struct SetEvaluation {
    CompositeCodes composite;
    ContingencyTable table;
    double ce = 0.0;
};

SetEvaluation evaluate(const BinnedWeights& binned, std::span<const FeatureCodes> members) {
    SetEvaluation e;
    e.composite = fuse_features(members);
    e.table = table_from_binned(binned, e.composite.codes, e.composite.levels(), e.composite.labels);
    e.ce = conditional_entropy(e.table).value;
    return e;
}

std::string join_names(std::span<const std::string> names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += "_";
        out += names[i];
    }
    return out;
}

}  // namespace

std::string AssociationRecord::name() const { return join_names(features); }

double feature_set_ce(const BinnedWeights& binned, std::span<const FeatureCodes> members) {
    return evaluate(binned, members).ce;
}

std::vector<MfsReport> run_mfs(const BinnedWeights& binned, std::span<const FeatureCodes> codes,
                               const MfsOptions& options, const std::string& label) {
    if (options.max_order < 1 || options.max_order > 3) {
        throw DomainError("run_mfs: max_order must be 1, 2 or 3");
    }
    if (codes.empty()) throw DomainError("run_mfs: no features");
    for (const auto& c : codes) {
        if (c.codes.size() != binned.rows()) throw DomainError("run_mfs: feature '" + c.name + "' misaligned with weights");
    }
    const Eigen::VectorXd col_mass = binned.mass.colwise().sum().transpose();
    const double h_response = shannon_of_mass(std::span<const double>(col_mass.data(), static_cast<std::size_t>(col_mass.size())));
    std::size_t n_u = 0;
    for (int d : binned.row_delta) n_u += static_cast<std::size_t>(d);

    std::map<std::vector<std::size_t>, double> drops;  // every evaluated set
    std::vector<MfsReport> reports;

    for (int order = 1; order <= std::min<int>(options.max_order, static_cast<int>(codes.size())); ++order) {
        const auto sets = combinations(codes.size(), static_cast<std::size_t>(order));
        std::vector<AssociationRecord> records(sets.size());

        parallel_for(sets.size(), options.workers, [&](std::size_t s) {
            const auto& set = sets[s];
            const auto members = pick(codes, set);
            const auto eval = evaluate(binned, members);
            AssociationRecord rec;
            rec.feature_indices = set;
            for (const auto& m : members) rec.features.push_back(m.name);
            rec.ce = eval.ce;
            rec.ce_drop = h_response - eval.ce;
            rec.levels = eval.composite.levels();
            if (order == 1) {
                rec.sce_drop = rec.ce_drop;
            } else if (order == 2) {
                const double drop_a = drops.at({set[0]});
                const double drop_b = drops.at({set[1]});
                rec.sce_drop = rec.ce_drop - std::max(drop_a, drop_b);
                std::vector<int> a_of_row;
                std::vector<int> b_of_row;
                for (const auto& t : eval.composite.tuples) {
                    a_of_row.push_back(t[0]);
                    b_of_row.push_back(t[1]);
                }
                const auto info = pair_information(eval.table, a_of_row, b_of_row);
                const auto eco = ecological_effect(info.mi_given_response, info.mi_marginal, options.ecological_tolerance);
                rec.ecological = eco.difference;
                rec.ecological_flag = eco.positive;
                rec.interacting = interacting_flag(rec.sce_drop, std::min(drop_a, drop_b), eco.positive,
                                                   options.interacting_factor);
            } else {
                // Best sub-pair and the remaining member.
                const std::array<std::array<std::size_t, 3>, 3> splits{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
                std::size_t best = 0;
                double best_drop = -1.0;
                for (std::size_t k = 0; k < splits.size(); ++k) {
                    const double d = drops.at({set[splits[k][0]], set[splits[k][1]]});
                    if (d > best_drop) {
                        best_drop = d;
                        best = k;
                    }
                }
                rec.sce_drop = rec.ce_drop - best_drop;
                const std::array<std::size_t, 2> pair_pos{splits[best][0], splits[best][1]};
                const auto a_of_row = project(eval.composite, pair_pos);
                std::vector<int> b_of_row;
                for (const auto& t : eval.composite.tuples) b_of_row.push_back(t[splits[best][2]]);
                const auto info = pair_information(eval.table, a_of_row, b_of_row);
                const auto eco = ecological_effect(info.mi_given_response, info.mi_marginal, options.ecological_tolerance);
                rec.ecological = eco.difference;
                rec.ecological_flag = eco.positive;
                rec.interacting = interacting_flag(rec.sce_drop, drops.at({set[splits[best][2]]}), eco.positive,
                                                   options.interacting_factor);
            }
            records[s] = std::move(rec);
        });

        for (const auto& rec : records) drops[rec.feature_indices] = rec.ce_drop;

        MfsReport report;
        report.order = order;
        report.h_response = h_response;
        report.label = label;
        report.n = binned.rows();
        report.n_uncensored = n_u;
        std::size_t thin = 0;
        for (const auto& rec : records) {
            if (n_u < 10 * static_cast<std::size_t>(rec.levels)) ++thin;
        }
        if (thin > 0) {
            report.warnings.push_back(fmt::format(
                "{} of {} {}-feature sets have fewer than 10 uncensored subjects per composite category (n_u={})",
                thin, records.size(), order, n_u));
        }
        std::stable_sort(records.begin(), records.end(),
                         [](const AssociationRecord& a, const AssociationRecord& b) { return a.ce < b.ce; });

        const std::size_t top = std::min(options.reliability_top, records.size());
        if (top > 0) {
            parallel_for(top, options.workers, [&](std::size_t r) {
                auto& rec = records[r];
                std::vector<FeatureCodes> anchor;
                if (order == 2) {
                    const auto a = rec.feature_indices[0];
                    const auto b = rec.feature_indices[1];
                    anchor.push_back(codes[drops.at({a}) >= drops.at({b}) ? a : b]);
                } else if (order == 3) {
                    const auto& s = rec.feature_indices;
                    std::vector<std::size_t> best{s[0], s[1]};
                    for (auto cand : {std::vector<std::size_t>{s[0], s[2]}, std::vector<std::size_t>{s[1], s[2]}}) {
                        if (drops.at(cand) > drops.at(best)) best = cand;
                    }
                    for (auto i : best) anchor.push_back(codes[i]);
                }
                const auto null = reliability_null(binned, anchor, options.noise_bins, options.reliability_reps,
                                                   substream_seed(options.seed, static_cast<std::uint64_t>(order * 100000 + r)), 1);
                rec.reliability_p = null.p_value(rec.ce);
            });
        }
        report.records = std::move(records);
        reports.push_back(std::move(report));
    }
    return reports;
}

double ReliabilityNull::p_value(double ce_observed) const {
    if (null_ce.empty()) return std::numeric_limits<double>::quiet_NaN();
    const auto hits = std::count_if(null_ce.begin(), null_ce.end(), [&](double v) { return v <= ce_observed; });
    return static_cast<double>(hits) / static_cast<double>(null_ce.size());
}

ReliabilityNull reliability_null(const BinnedWeights& binned, std::span<const FeatureCodes> anchor, int noise_bins,
                                 int n_rep, std::uint64_t seed, unsigned workers) {
    if (n_rep < 1) throw DomainError("reliability_null: n_rep must be >= 1");
    if (noise_bins < 2) throw DomainError("reliability_null: noise_bins must be >= 2");
    const std::size_t n = binned.rows();
    ReliabilityNull out;
    out.null_ce.resize(static_cast<std::size_t>(n_rep));
    parallel_for(out.null_ce.size(), workers, [&](std::size_t r) {
        auto rng = make_rng(seed, r);
        std::vector<double> noise(n);
        for (auto& v : noise) v = uniform01(rng);
        FeatureCodes v0;
        v0.name = "V0";
        v0.levels = noise_bins;
        if (n >= 2 && *std::min_element(noise.begin(), noise.end()) < *std::max_element(noise.begin(), noise.end())) {
            v0.codes = categorize(noise, equal_width_bins(noise, static_cast<std::size_t>(noise_bins))).codes;
        } else {
            v0.codes.assign(n, 0);
        }
        std::vector<FeatureCodes> members{v0};
        members.insert(members.end(), anchor.begin(), anchor.end());
        out.null_ce[r] = feature_set_ce(binned, members);
    });
    return out;
}

Subdivision subdivide(const Dataset& dataset, const FeatureCodes& feature) {
    if (feature.codes.size() != dataset.size()) throw DomainError("subdivide: codes misaligned with dataset");
    Subdivision out;
    out.feature = feature.name;
    const int levels = std::max(feature.levels, *std::max_element(feature.codes.begin(), feature.codes.end()) + 1);
    std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(levels));
    for (std::size_t i = 0; i < feature.codes.size(); ++i) groups[static_cast<std::size_t>(feature.codes[i])].push_back(i);
    for (int c = 0; c < levels; ++c) {
        const std::string cat = c < static_cast<int>(feature.level_labels.size()) ? feature.level_labels[static_cast<std::size_t>(c)]
                                                                                  : std::to_string(c + 1);
        auto& idx = groups[static_cast<std::size_t>(c)];
        if (idx.empty()) {
            out.notices.push_back(fmt::format("{}={} is empty and was omitted", feature.name, cat));
            continue;
        }
        SubCollection part;
        part.category = c;
        part.label = feature.name + "=" + cat;
        part.data = dataset.subset(idx);
        part.indices = std::move(idx);
        out.parts.push_back(std::move(part));
    }
    return out;
}

std::vector<FeatureCodes> restrict_codes(std::span<const FeatureCodes> codes, std::span<const std::size_t> indices) {
    std::vector<FeatureCodes> out;
    out.reserve(codes.size());
    for (const auto& c : codes) {
        FeatureCodes r;
        r.name = c.name;
        r.levels = c.levels;
        r.level_labels = c.level_labels;
        r.codes.reserve(indices.size());
        for (auto i : indices) r.codes.push_back(c.codes.at(i));
        out.push_back(std::move(r));
    }
    return out;
}

MceResult mce_matrix(std::span<const FeatureCodes> codes, double threshold) {
    if (codes.size() < 2) throw DomainError("mce_matrix: needs at least 2 features");
    const auto k = static_cast<Eigen::Index>(codes.size());
    MceResult out;
    for (const auto& c : codes) out.names.push_back(c.name);
    out.matrix = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = a + 1; b < k; ++b) {
            const auto& ca = codes[static_cast<std::size_t>(a)];
            const auto& cb = codes[static_cast<std::size_t>(b)];
            // Rows A, columns B: conditional_entropy gives H[B|A].
            const auto table = table_plain(ca.codes, cb.codes);
            const double h_a = row_entropy(table);
            const double h_b = column_entropy(table);
            double mce = 1.0;
            if (h_a > 0.0 && h_b > 0.0) {
                const double b_given_a = conditional_entropy(table).value;
                const double a_given_b = conditional_entropy(table.transpose()).value;
                mce = std::max(a_given_b / h_a, b_given_a / h_b);
            }
            out.matrix(a, b) = out.matrix(b, a) = mce;
            if (mce < threshold) {
                out.edges.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b), mce});
            }
        }
    }
    return out;
}

namespace {

std::vector<ExpansionDot> dots_for(const ContingencyTable& table, const std::vector<std::vector<int>>& tuples,
                                   const std::string& series, double h_response) {
    const auto ce = conditional_entropy(table);
    std::vector<ExpansionDot> dots;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        if (!(ce.row_masses[r] > 0.0)) continue;
        ExpansionDot d;
        d.series = series;
        d.category = table.row_labels()[r];
        d.tuple = tuples[r];
        d.ce = ce.row_entropies[r];
        d.rescaled_ce = h_response > 0.0 ? d.ce / h_response : 0.0;
        d.mass = ce.row_masses[r];
        Eigen::Index arg = 0;
        table.cells().row(static_cast<Eigen::Index>(r)).maxCoeff(&arg);
        d.dominant_bin = static_cast<int>(arg);
        dots.push_back(std::move(d));
    }
    return dots;
}

}  // namespace

CeExpansion ce_expansion(const BinnedWeights& binned, const FeatureCodes& base, std::span<const FeatureCodes> extension) {
    if (extension.empty()) throw DomainError("ce_expansion: extension must name at least one feature");
    CeExpansion out;
    out.base = base.name;
    for (const auto& e : extension) out.extension.push_back(e.name);
    out.response_labels = binned.time_scheme.labels();

    const int base_levels = std::max(base.levels, *std::max_element(base.codes.begin(), base.codes.end()) + 1);
    std::vector<std::string> base_labels;
    std::vector<std::vector<int>> base_tuples;
    for (int c = 0; c < base_levels; ++c) {
        base_labels.push_back(std::to_string(c + 1));
        base_tuples.push_back({c});
    }
    const auto base_table = table_from_binned(binned, base.codes, base_levels, base_labels);
    out.h_response = column_entropy(base_table);
    out.base_dots = dots_for(base_table, base_tuples, base.name, out.h_response);

    std::vector<FeatureCodes> members{base};
    members.insert(members.end(), extension.begin(), extension.end());
    const auto comp = fuse_features(members);
    const auto comp_table = table_from_binned(binned, comp.codes, comp.levels(), comp.labels);
    std::string series = base.name;
    for (const auto& e : extension) series += "+" + e.name;
    out.composite_dots = dots_for(comp_table, comp.tuples, series, out.h_response);
    return out;
}

std::string CodeId::to_string() const {
    std::string s;
    for (const auto& [feature, cat] : path) s += feature + "-" + cat + "-";
    return s + response;
}

std::vector<CodeId> assign_code_ids(const CeExpansion& expansion, double threshold,
                                    std::vector<std::pair<std::string, std::string>> prefix) {
    std::vector<CodeId> out;
    std::vector<std::string> names{expansion.base};
    names.insert(names.end(), expansion.extension.begin(), expansion.extension.end());
    for (const auto& dot : expansion.composite_dots) {
        if (!(dot.mass > 0.0) || dot.ce > threshold) continue;
        CodeId id;
        id.path = prefix;
        for (std::size_t m = 0; m < names.size() && m < dot.tuple.size(); ++m) {
            id.path.emplace_back(names[m], std::to_string(dot.tuple[m] + 1));
        }
        const auto b = static_cast<std::size_t>(dot.dominant_bin);
        id.response = "T" + (b < expansion.response_labels.size() ? expansion.response_labels[b] : std::to_string(b + 1));
        id.ce_at_leaf = dot.ce;
        id.mass = dot.mass;
        out.push_back(std::move(id));
    }
    return out;
}

}  // namespace ceda
