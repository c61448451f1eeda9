#include "ceda/report.hpp"

#include "ceda/csv.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace ceda::report {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
    if (std::isnan(v)) return "NA";
    return fmt::format("{:.10g}", v);
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

ordered_json jnum(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

ordered_json jopt(const std::optional<double>& v) { return v ? jnum(*v) : ordered_json(nullptr); }

std::string member_p(const AssociationRecord& rec, const CoxPValues& cox) {
    std::string out;
    for (std::size_t i = 0; i < rec.features.size(); ++i) {
        if (i) out += ";";
        const auto it = cox.find(rec.features[i]);
        out += it == cox.end() ? "NA" : num(it->second);
    }
    return out;
}

}  // namespace

CoxPValues cox_p_values(const CoxFit& fit) {
    CoxPValues out;
    for (std::size_t i = 0; i < fit.features.size(); ++i) out[fit.features[i]] = fit.wald_p[static_cast<Eigen::Index>(i)];
    return out;
}

void write_mfs_csv(std::ostream& out, const MfsReport& report, const CoxPValues* cox) {
    std::vector<std::string> header{"rank", "feature_set", "ce", "ce_drop", "sce_drop", "ecological",
                                    "ecological_flag", "interacting", "reliability_p", "levels"};
    if (cox) header.push_back("ph_p");
    csv::write_row(out, header);
    std::size_t rank = 1;
    for (const auto& r : report.records) {
        std::vector<std::string> row{std::to_string(rank++), r.name(), num(r.ce), num(r.ce_drop), num(r.sce_drop),
                                     opt(r.ecological), r.ecological ? (r.ecological_flag ? "1" : "0") : "NA",
                                     report.order > 1 ? (r.interacting ? "1" : "0") : "NA", opt(r.reliability_p),
                                     std::to_string(r.levels)};
        if (cox) row.push_back(member_p(r, *cox));
        csv::write_row(out, row);
    }
}

std::string mfs_json(const std::vector<MfsReport>& reports, const CoxPValues* cox) {
    ordered_json j = ordered_json::array();
    for (const auto& rep : reports) {
        ordered_json r;
        r["label"] = rep.label;
        r["order"] = rep.order;
        r["n"] = rep.n;
        r["n_uncensored"] = rep.n_uncensored;
        r["h_response"] = jnum(rep.h_response);
        r["warnings"] = rep.warnings;
        ordered_json recs = ordered_json::array();
        for (const auto& a : rep.records) {
            ordered_json x;
            x["feature_set"] = a.name();
            x["features"] = a.features;
            x["ce"] = jnum(a.ce);
            x["ce_drop"] = jnum(a.ce_drop);
            x["sce_drop"] = jnum(a.sce_drop);
            x["ecological"] = jopt(a.ecological);
            x["ecological_flag"] = a.ecological_flag;
            x["interacting"] = a.interacting;
            x["reliability_p"] = jopt(a.reliability_p);
            x["levels"] = a.levels;
            if (cox) {
                ordered_json ps = ordered_json::array();
                for (const auto& f : a.features) {
                    const auto it = cox->find(f);
                    ps.push_back(it == cox->end() ? ordered_json(nullptr) : jnum(it->second));
                }
                x["ph_p"] = ps;
            }
            recs.push_back(std::move(x));
        }
        r["records"] = std::move(recs);
        j.push_back(std::move(r));
    }
    return j.dump(2);
}

void write_cox_csv(std::ostream& out, const CoxFit& fit) {
    csv::write_row(out, {"feature", "beta", "se", "z", "wald_p", "converged"});
    for (std::size_t i = 0; i < fit.features.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        const double z = fit.beta[k] / fit.se[k];
        csv::write_row(out, {fit.features[i], num(fit.beta[k]), num(fit.se[k]), num(z), num(fit.wald_p[k]),
                             fit.converged ? "1" : "0"});
    }
}

std::string cox_json(const CoxFit& fit) {
    ordered_json j;
    j["converged"] = fit.converged;
    j["singular"] = fit.singular;
    j["iterations"] = fit.iterations;
    j["loglik"] = jnum(fit.loglik);
    j["loglik_null"] = jnum(fit.loglik_null);
    j["message"] = fit.message;
    ordered_json coefs = ordered_json::array();
    for (std::size_t i = 0; i < fit.features.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        coefs.push_back({{"feature", fit.features[i]},
                         {"beta", jnum(fit.beta[k])},
                         {"se", jnum(fit.se[k])},
                         {"wald_p", jnum(fit.wald_p[k])}});
    }
    j["coefficients"] = std::move(coefs);
    return j.dump(2);
}

void write_censor_summary_csv(std::ostream& out, const CensorTestResult& result) {
    csv::write_row(out, {"axis", "label", "mass", "observed", "p_value", "min_error_sum", "skipped"});
    for (const auto& [axis, list] : {std::pair{"row", &result.rows}, std::pair{"col", &result.cols}}) {
        for (const auto& s : *list) {
            csv::write_row(out, {axis, s.label, num(s.mass), s.skipped ? "NA" : num(s.observed),
                                 s.skipped ? "NA" : num(s.p_value), s.skipped ? "NA" : num(s.min_error_sum),
                                 s.skipped ? "1" : "0"});
        }
    }
}

void write_censor_samples_csv(std::ostream& out, const CensorTestResult& result) {
    csv::write_row(out, {"axis", "label", "kind", "replicate", "value"});
    for (const auto& [axis, list] : {std::pair{"row", &result.rows}, std::pair{"col", &result.cols}}) {
        for (const auto& s : *list) {
            for (std::size_t r = 0; r < s.null_samples.size(); ++r) {
                csv::write_row(out, {axis, s.label, "null", std::to_string(r + 1), num(s.null_samples[r])});
            }
            for (std::size_t r = 0; r < s.alt_samples.size(); ++r) {
                csv::write_row(out, {axis, s.label, "alt", std::to_string(r + 1), num(s.alt_samples[r])});
            }
        }
    }
}

std::string censor_json(const CensorTestResult& result) {
    ordered_json j;
    j["verdict"] = result.not_rejected ? "non-informative censoring not rejected" : "non-informative censoring rejected";
    j["heuristic"] = true;
    j["alpha"] = result.alpha;
    j["h_col_marginal"] = jnum(result.h_col_marginal);
    j["h_row_marginal"] = jnum(result.h_row_marginal);
    auto axis = [](const std::vector<AxisSummary>& list) {
        ordered_json a = ordered_json::array();
        for (const auto& s : list) {
            a.push_back({{"label", s.label},
                         {"mass", jnum(s.mass)},
                         {"skipped", s.skipped},
                         {"observed", s.skipped ? ordered_json(nullptr) : jnum(s.observed)},
                         {"p_value", s.skipped ? ordered_json(nullptr) : jnum(s.p_value)},
                         {"min_error_sum", s.skipped ? ordered_json(nullptr) : jnum(s.min_error_sum)}});
        }
        return a;
    };
    j["rows"] = axis(result.rows);
    j["cols"] = axis(result.cols);
    j["notices"] = result.notices;
    return j.dump(2);
}

void write_reliability_csv(std::ostream& out, const std::string& feature_set, const ReliabilityNull& null, double observed) {
    csv::write_row(out, {"feature_set", "kind", "replicate", "ce"});
    csv::write_row(out, {feature_set, "observed", "0", num(observed)});
    for (std::size_t r = 0; r < null.null_ce.size(); ++r) {
        csv::write_row(out, {feature_set, "null", std::to_string(r + 1), num(null.null_ce[r])});
    }
}

void write_mce_csv(std::ostream& out, const MceResult& mce) {
    std::vector<std::string> header{""};
    header.insert(header.end(), mce.names.begin(), mce.names.end());
    csv::write_row(out, header);
    for (std::size_t a = 0; a < mce.names.size(); ++a) {
        std::vector<std::string> row{mce.names[a]};
        for (std::size_t b = 0; b < mce.names.size(); ++b) {
            row.push_back(num(mce.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))));
        }
        csv::write_row(out, row);
    }
}

void write_mce_edges_csv(std::ostream& out, const MceResult& mce) {
    csv::write_row(out, {"a", "b", "mce"});
    for (const auto& e : mce.edges) csv::write_row(out, {mce.names[e.a], mce.names[e.b], num(e.mce)});
}

void write_expansion_csv(std::ostream& out, const CeExpansion& expansion) {
    csv::write_row(out, {"series", "category", "ce", "rescaled_ce", "mass", "dominant_bin"});
    for (const auto* dots : {&expansion.base_dots, &expansion.composite_dots}) {
        for (const auto& d : *dots) {
            const auto b = static_cast<std::size_t>(d.dominant_bin);
            csv::write_row(out, {d.series, d.category, num(d.ce), num(d.rescaled_ce), num(d.mass),
                                 b < expansion.response_labels.size() ? expansion.response_labels[b] : std::to_string(b + 1)});
        }
    }
}

void write_code_ids_csv(std::ostream& out, const std::vector<CodeId>& ids) {
    csv::write_row(out, {"code_id", "ce", "mass"});
    for (const auto& id : ids) csv::write_row(out, {id.to_string(), num(id.ce_at_leaf), num(id.mass)});
}

void write_weight_triplets(std::ostream& out, const WeightMatrix& w) {
    csv::write_row(out, {"row_id", "row_time", "row_delta", "col_time", "weight"});
    for (std::size_t r = 0; r < w.rows(); ++r) {
        for (std::size_t c = 0; c < w.cols(); ++c) {
            const double v = w.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (v == 0.0) continue;
            csv::write_row(out, {w.row_ids[r], num(w.row_times[r]), std::to_string(w.row_delta[r]), num(w.col_times[c]),
                                 fmt::format("{:.17g}", v)});
        }
    }
}

}  // namespace ceda::report
