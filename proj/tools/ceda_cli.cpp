#include "manifest.hpp"

#include <ceda/censor_test.hpp>
#include <ceda/config.hpp>
#include <ceda/contingency.hpp>
#include <ceda/coxph.hpp>
#include <ceda/csv.hpp>
#include <ceda/error.hpp>
#include <ceda/mfs.hpp>
#include <ceda/redistribution.hpp>
#include <ceda/report.hpp>
#include <ceda/simgen.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
    std::string input;
    std::string config;
    std::string out_dir = "ceda_out";
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string time_bins;  // overrides the config method when set
    int time_bin_count = 0;
    int covariate_bins = 0;
};

struct MfsFlags {
    int max_order = 3;
    std::size_t reliability_top = 0;
    int reliability_reps = 200;
    double interacting_factor = 3.0;
};

struct Prepared {
    ceda::AnalysisConfig config;
    ceda::Dataset data;
    std::vector<ceda::FeatureCoder> coders;
    std::vector<ceda::FeatureCodes> codes;
    ceda::BinningScheme time_scheme;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool needs_input = true) {
    if (needs_input) {
        cmd->add_option("--input,-i", f.input, "Input CSV")->required()->check(CLI::ExistingFile);
        cmd->add_option("--config,-c", f.config, "Column/binning config (JSON)")->required();
    }
    cmd->add_option("--out-dir,-o", f.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    cmd->add_option("--workers", f.workers, "Worker threads (0 = all cores)")->capture_default_str();
    cmd->add_option("--time-bins", f.time_bins, "Response binning: equal-width | km-quantile | explicit");
    cmd->add_option("--time-bin-count", f.time_bin_count, "Number of response bins")->check(CLI::Range(2, 1000));
    cmd->add_option("--covariate-bins", f.covariate_bins, "Equal-width bins per continuous feature")
        ->check(CLI::Range(2, 1000));
}

void add_mfs(CLI::App* cmd, MfsFlags& f) {
    cmd->add_option("--max-order", f.max_order, "Largest feature-set size (1-3)")->check(CLI::Range(1, 3))->capture_default_str();
    cmd->add_option("--reliability-top", f.reliability_top, "Reliability nulls for the best N sets per order")
        ->capture_default_str();
    cmd->add_option("--reliability-reps", f.reliability_reps, "Null replicates per reliability check")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    cmd->add_option("--interacting-factor", f.interacting_factor, "SCE-drop multiple for the interacting flag")
        ->capture_default_str();
}

Prepared prepare(const CommonFlags& f, tools::Manifest& manifest) {
    Prepared p;
    p.config = ceda::load_config(f.config);
    if (!f.time_bins.empty()) p.config.time.method = ceda::parse_time_method(f.time_bins);
    if (f.time_bin_count > 0) p.config.time.bins = static_cast<std::size_t>(f.time_bin_count);
    if (f.covariate_bins > 0) p.config.covariates.bins = static_cast<std::size_t>(f.covariate_bins);
    manifest.add_input(f.input);
    manifest.add_input(f.config);
    manifest.set_config(p.config);
    p.data = ceda::ingest_csv(f.input, p.config.columns);
    if (p.data.empty()) throw ceda::DomainError("input has no records");
    p.coders = ceda::build_coders(p.data, p.config.covariates);
    p.codes = ceda::encode_features(p.data, p.coders);
    p.time_scheme = ceda::make_time_scheme(p.data, p.config.time);
    return p;
}

ceda::MfsOptions mfs_options(const MfsFlags& m, const CommonFlags& f) {
    ceda::MfsOptions o;
    o.max_order = m.max_order;
    o.reliability_top = m.reliability_top;
    o.reliability_reps = m.reliability_reps;
    o.interacting_factor = m.interacting_factor;
    o.seed = f.seed;
    o.workers = f.workers;
    return o;
}

std::string file_tag(const std::string& label) {
    std::string out;
    for (char c : label) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return out;
}

void print_top(const std::vector<ceda::MfsReport>& reports, std::size_t top = 5) {
    for (const auto& r : reports) {
        std::cout << fmt::format("[{}] order {} (n={}, n_u={}, H[Y]={:.4f})\n", r.label, r.order, r.n, r.n_uncensored,
                                 r.h_response);
        for (std::size_t i = 0; i < std::min(top, r.records.size()); ++i) {
            const auto& a = r.records[i];
            std::cout << fmt::format("  {:<14} CE={:.4f} SCE-dp={:.4f}{}\n", a.name(), a.ce, a.sce_drop,
                                     a.interacting ? "  interacting" : "");
        }
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    }
}

std::vector<ceda::MfsReport> mfs_pass(const ceda::Dataset& data, std::span<const ceda::FeatureCodes> codes,
                                      const ceda::BinningScheme& scheme, const ceda::MfsOptions& opts,
                                      const std::string& label) {
    const auto binned = ceda::bin_weights(data, scheme);
    return ceda::run_mfs(binned, codes, opts, label);
}

void write_mfs_reports(tools::Manifest& m, const std::vector<ceda::MfsReport>& reports, const std::string& tag,
                       const ceda::report::CoxPValues* cox) {
    for (const auto& r : reports) {
        m.write(fmt::format("mfs_{}_order{}.csv", tag, r.order), [&](std::ostream& o) { ceda::report::write_mfs_csv(o, r, cox); });
    }
    m.write(fmt::format("mfs_{}.json", tag), [&](std::ostream& o) { o << ceda::report::mfs_json(reports, cox) << "\n"; });
}

std::vector<std::string> all_features(const ceda::Dataset& d) { return d.feature_names(); }

// --- simulate -------------------------------------------------------------

struct SimulateFlags {
    std::size_t n = 10000;
    double censor_target = 0.1;
    std::optional<double> censor_rate;
    std::uint64_t seed = 1;
    std::size_t features = 10;
    std::string out = "simulated.csv";
    bool hidden = false;
    unsigned workers = 0;
};

int cmd_simulate(const SimulateFlags& f, const std::vector<std::string>& argv) {
    if (!(f.censor_target >= 0.0 && f.censor_target < 1.0)) throw ceda::ConfigError("--censor-rate must lie in [0, 1)");
    ceda::SimConfig cfg;
    cfg.n = f.n;
    cfg.censor_target = f.censor_target;
    cfg.censor_rate = f.censor_rate;
    cfg.seed = f.seed;
    cfg.n_features = f.features;
    cfg.workers = f.workers;
    try {
        ceda::validate(cfg);
    } catch (const ceda::DomainError& e) {
        throw ceda::ConfigError(e.what());
    }
    const fs::path out(f.out);
    const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
    tools::Manifest manifest("simulate", argv, f.seed, dir, out.filename().string() + ".manifest.json");
    const auto sim = manifest.time("generate", [&] { return ceda::generate(cfg); });

    manifest.write(out.filename().string(), [&](std::ostream& o) {
        if (!f.hidden) {
            ceda::write_dataset_csv(o, sim.data);
            return;
        }
        std::vector<std::string> header{"id", "time", "status"};
        header.insert(header.end(), sim.data.feature_names().begin(), sim.data.feature_names().end());
        header.push_back("true_time");
        header.push_back("censor_time");
        ceda::csv::write_row(o, header);
        for (std::size_t i = 0; i < sim.data.size(); ++i) {
            const auto& r = sim.data[i];
            std::vector<std::string> row{r.id, fmt::format("{:.17g}", r.y), std::to_string(r.delta)};
            for (double v : r.covariates) row.push_back(fmt::format("{:.17g}", v));
            row.push_back(fmt::format("{:.17g}", sim.true_time[i]));
            row.push_back(fmt::format("{:.17g}", sim.censor_time[i]));
            ceda::csv::write_row(o, row);
        }
    });

    // The sidecar doubles as an analysis config for the file it describes.
    ceda::AnalysisConfig ac;
    ac.columns.id = "id";
    ac.columns.features = sim.data.feature_names();
    auto side = nlohmann::ordered_json::parse(ceda::config_to_json(ac));
    side["simulation"] = {{"n", cfg.n},
                          {"shape", cfg.shape},
                          {"u_rate", cfg.u_rate},
                          {"censor_target", cfg.censor_target},
                          {"censor_rate", sim.censor_rate},
                          {"calibrated", !f.censor_rate.has_value() && cfg.censor_target > 0.0},
                          {"n_features", cfg.n_features},
                          {"seed", cfg.seed},
                          {"observed_censoring", sim.data.censoring_rate()}};
    manifest.write(out.filename().string() + ".sidecar.json", [&](std::ostream& o) { o << side.dump(2) << "\n"; });
    manifest.finish();
    std::cout << fmt::format("wrote {} records ({:.2f}% censored, rate {:.6g}) to {}\n", sim.data.size(),
                             100.0 * sim.data.censoring_rate(), sim.censor_rate, out.string());
    return kExitOk;
}

// --- censor-test ----------------------------------------------------------

struct CensorFlags {
    int n_sim = 10000;
    bool fractional = false;
    bool one_sided = false;
    double alpha = 0.05;
    std::string table;
};

ceda::ContingencyTable read_table_csv(const std::string& path) {
    const auto t = ceda::csv::read_file(path);
    if (t.header.size() < 3 || t.rows.size() < 2) throw ceda::ConfigError("table CSV needs a label column plus >= 2 columns and >= 2 rows");
    Eigen::MatrixXd cells(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(t.header.size() - 1));
    std::vector<std::string> row_labels;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        row_labels.push_back(t.rows[r][0]);
        for (std::size_t c = 1; c < t.header.size(); ++c) {
            try {
                std::size_t used = 0;
                cells(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c - 1)) = std::stod(t.rows[r][c], &used);
            } catch (const std::exception&) {
                throw ceda::ParseError(r + 1, "table cell '" + t.rows[r][c] + "' is not numeric");
            }
        }
    }
    return ceda::ContingencyTable(cells, row_labels, std::vector<std::string>(t.header.begin() + 1, t.header.end()));
}

ceda::CensorTestOptions censor_options(const CensorFlags& c, const CommonFlags& f) {
    ceda::CensorTestOptions o;
    o.n_sim = c.n_sim;
    o.seed = f.seed;
    o.round_row_mass = !c.fractional;
    o.two_sided = !c.one_sided;
    o.alpha = c.alpha;
    o.workers = f.workers;
    return o;
}

void write_censor(tools::Manifest& m, const ceda::CensorTestResult& r) {
    m.write("censor_table.csv", [&](std::ostream& o) { ceda::write_table_csv(o, r.table); });
    if (r.from_censored) m.write("censor_from_censored.csv", [&](std::ostream& o) { ceda::write_table_csv(o, *r.from_censored); });
    if (r.from_events) m.write("censor_from_events.csv", [&](std::ostream& o) { ceda::write_table_csv(o, *r.from_events); });
    m.write("censor_summary.csv", [&](std::ostream& o) { ceda::report::write_censor_summary_csv(o, r); });
    m.write("censor_samples.csv", [&](std::ostream& o) { ceda::report::write_censor_samples_csv(o, r); });
    m.write("censor_test.json", [&](std::ostream& o) { o << ceda::report::censor_json(r) << "\n"; });
    std::cout << fmt::format("censor test: H[T]={:.4f} H[C]={:.4f}; {}\n", r.h_col_marginal, r.h_row_marginal,
                             r.not_rejected ? "non-informative censoring not rejected" : "non-informative censoring rejected");
    for (const auto& n : r.notices) std::cerr << "notice: " << n << "\n";
}

int cmd_censor(const CommonFlags& f, const CensorFlags& c, const std::vector<std::string>& argv) {
    tools::Manifest manifest("censor-test", argv, f.seed, f.out_dir);
    const auto opts = censor_options(c, f);
    if (!c.table.empty()) {
        manifest.add_input(c.table);
        const auto table = read_table_csv(c.table);
        const auto r = manifest.time("censor_test", [&] { return ceda::run_censor_test(table, opts); });
        write_censor(manifest, r);
    } else {
        if (f.input.empty() || f.config.empty()) throw ceda::ConfigError("censor-test needs --table or --input with --config");
        const auto p = prepare(f, manifest);
        const auto r = manifest.time("censor_test", [&] { return ceda::run_censor_test(p.data, p.time_scheme, opts); });
        write_censor(manifest, r);
    }
    manifest.finish();
    return kExitOk;
}

// --- cox ------------------------------------------------------------------

ceda::CoxFit run_cox(tools::Manifest& m, const ceda::Dataset& data, std::vector<std::string> features,
                     const std::string& tag) {
    if (features.empty()) features = all_features(data);
    const auto fit = m.time("cox", [&] { return ceda::fit_cox(data, features); });
    m.write(fmt::format("cox_{}.csv", tag), [&](std::ostream& o) { ceda::report::write_cox_csv(o, fit); });
    m.write(fmt::format("cox_{}.json", tag), [&](std::ostream& o) { o << ceda::report::cox_json(fit) << "\n"; });
    if (!fit.converged) std::cerr << fmt::format("warning: Cox fit on {} did not converge: {}\n", tag, fit.message);
    return fit;
}

int cmd_cox(const CommonFlags& f, const std::vector<std::string>& features, const std::vector<std::string>& argv) {
    tools::Manifest manifest("cox", argv, f.seed, f.out_dir);
    const auto p = prepare(f, manifest);
    const auto fit = run_cox(manifest, p.data, features, "all");
    for (std::size_t i = 0; i < fit.features.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        std::cout << fmt::format("{:<10} beta={:+.4f} se={:.4f} p={:.4g}\n", fit.features[i], fit.beta[k], fit.se[k], fit.wald_p[k]);
    }
    manifest.finish();
    return kExitOk;
}

// --- mfs / subdivide / analyze --------------------------------------------

int cmd_mfs(const CommonFlags& f, const MfsFlags& mf, const std::vector<std::string>& argv) {
    tools::Manifest manifest("mfs", argv, f.seed, f.out_dir);
    const auto p = prepare(f, manifest);
    const auto reports = manifest.time("mfs", [&] { return mfs_pass(p.data, p.codes, p.time_scheme, mfs_options(mf, f), "all"); });
    write_mfs_reports(manifest, reports, "all", nullptr);
    print_top(reports);
    manifest.finish();
    return kExitOk;
}

struct SubdivideResult {
    ceda::Subdivision split;
    std::vector<std::vector<ceda::MfsReport>> reports;
};

SubdivideResult run_subdivision(tools::Manifest& m, const Prepared& p, const std::string& feature,
                                const ceda::MfsOptions& opts, bool cox) {
    const auto fi = p.data.feature_index(feature);
    SubdivideResult out;
    out.split = ceda::subdivide(p.data, p.codes[fi]);
    for (const auto& n : out.split.notices) std::cerr << "notice: " << n << "\n";

    m.write(fmt::format("subdivide_{}_sizes.csv", file_tag(feature)), [&](std::ostream& o) {
        ceda::csv::write_row(o, {"label", "n", "n_uncensored", "n_censored"});
        for (const auto& part : out.split.parts) {
            ceda::csv::write_row(o, {part.label, std::to_string(part.data.size()), std::to_string(part.data.n_uncensored()),
                                     std::to_string(part.data.n_censored())});
        }
    });
    for (const auto& part : out.split.parts) {
        std::vector<ceda::FeatureCodes> codes;
        for (std::size_t k = 0; k < p.codes.size(); ++k) {
            if (k != fi) codes.push_back(p.codes[k]);
        }
        codes = ceda::restrict_codes(codes, part.indices);
        const auto tag = file_tag(part.label);
        std::vector<ceda::MfsReport> reports;
        // The global time scheme is reused so sub-collection tables share bins.
        reports = m.time("mfs_" + tag, [&] { return mfs_pass(part.data, codes, p.time_scheme, opts, part.label); });
        std::optional<ceda::report::CoxPValues> pv;
        if (cox && part.data.n_uncensored() > 0) {
            std::vector<std::string> feats;
            for (const auto& c : codes) feats.push_back(c.name);
            pv = ceda::report::cox_p_values(run_cox(m, part.data, feats, tag));
        }
        write_mfs_reports(m, reports, tag, pv ? &*pv : nullptr);
        print_top(reports, 3);
        out.reports.push_back(std::move(reports));
    }
    return out;
}

int cmd_subdivide(const CommonFlags& f, const MfsFlags& mf, const std::string& feature, bool cox,
                  const std::vector<std::string>& argv) {
    tools::Manifest manifest("subdivide", argv, f.seed, f.out_dir);
    const auto p = prepare(f, manifest);
    run_subdivision(manifest, p, feature, mfs_options(mf, f), cox);
    manifest.finish();
    return kExitOk;
}

struct AnalyzeFlags {
    std::string subdivide;
    bool cox = false;
    bool censor = false;
    bool weights = false;
    bool mce = true;
    std::vector<std::string> expand;  // "BASE:EXT1+EXT2"
    double code_threshold = 0.05;
};

void run_expansion(tools::Manifest& m, const Prepared& p, const ceda::Dataset& data,
                   std::span<const ceda::FeatureCodes> codes, const std::string& spec, const std::string& tag,
                   std::vector<std::pair<std::string, std::string>> prefix, double threshold,
                   std::vector<ceda::CodeId>& ids) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ceda::ConfigError("--expand expects BASE:EXT[+EXT...], got '" + spec + "'");
    auto find = [&](const std::string& name) -> const ceda::FeatureCodes& {
        for (const auto& c : codes) {
            if (c.name == name) return c;
        }
        throw ceda::ConfigError("--expand names unknown feature '" + name + "'");
    };
    const auto& base = find(spec.substr(0, colon));
    std::vector<ceda::FeatureCodes> ext;
    std::stringstream rest(spec.substr(colon + 1));
    for (std::string name; std::getline(rest, name, '+');) ext.push_back(find(name));
    const auto binned = ceda::bin_weights(data, p.time_scheme);
    const auto e = ceda::ce_expansion(binned, base, ext);
    std::string stag = base.name;
    for (const auto& x : ext) stag += "_" + x.name;
    m.write(fmt::format("expansion_{}_{}.csv", tag, stag), [&](std::ostream& o) { ceda::report::write_expansion_csv(o, e); });
    auto found = ceda::assign_code_ids(e, threshold, std::move(prefix));
    ids.insert(ids.end(), found.begin(), found.end());
}

int cmd_analyze(const CommonFlags& f, const MfsFlags& mf, const AnalyzeFlags& a, const CensorFlags& c,
                const std::vector<std::string>& argv) {
    tools::Manifest manifest("analyze", argv, f.seed, f.out_dir);
    const auto p = prepare(f, manifest);
    const auto opts = mfs_options(mf, f);
    std::cout << fmt::format("n={} uncensored={} censored={}\n", p.data.size(), p.data.n_uncensored(), p.data.n_censored());

    manifest.write("km.csv", [&](std::ostream& o) {
        const auto km = ceda::km_estimate(p.data);
        ceda::csv::write_row(o, {"time", "survival"});
        for (std::size_t i = 0; i < km.jump_times.size(); ++i) {
            ceda::csv::write_row(o, {fmt::format("{:.10g}", km.jump_times[i]), fmt::format("{:.10g}", km.values[i])});
        }
    });
    manifest.write("time_bins.csv", [&](std::ostream& o) {
        ceda::csv::write_row(o, {"bin", "lower", "upper"});
        const auto& e = p.time_scheme.edges();
        for (std::size_t b = 0; b + 1 < e.size(); ++b) {
            ceda::csv::write_row(o, {p.time_scheme.labels()[b], fmt::format("{:.10g}", e[b]), fmt::format("{:.10g}", e[b + 1])});
        }
    });

    std::optional<ceda::report::CoxPValues> pv;
    if (a.cox) pv = ceda::report::cox_p_values(run_cox(manifest, p.data, {}, "all"));
    const auto reports = manifest.time("mfs", [&] { return mfs_pass(p.data, p.codes, p.time_scheme, opts, "all"); });
    write_mfs_reports(manifest, reports, "all", pv ? &*pv : nullptr);
    print_top(reports);

    if (a.mce && p.codes.size() >= 2) {
        const auto mce = ceda::mce_matrix(p.codes);
        manifest.write("mce.csv", [&](std::ostream& o) { ceda::report::write_mce_csv(o, mce); });
        manifest.write("mce_edges.csv", [&](std::ostream& o) { ceda::report::write_mce_edges_csv(o, mce); });
    }
    if (a.censor) {
        if (p.data.n_censored() == 0 || p.data.n_uncensored() == 0) {
            std::cerr << "notice: censor test skipped (needs both censored and uncensored records)\n";
        } else {
            const auto r = manifest.time("censor_test", [&] { return ceda::run_censor_test(p.data, p.time_scheme, censor_options(c, f)); });
            write_censor(manifest, r);
        }
    }
    if (a.weights) {
        if (p.data.size() > 5000) throw ceda::ConfigError("--weights writes a dense matrix; refusing n > 5000");
        const auto w = ceda::build_weight_matrix(p.data);
        manifest.write("weights.csv", [&](std::ostream& o) { ceda::report::write_weight_triplets(o, w); });
    }

    std::vector<ceda::CodeId> ids;
    if (!a.subdivide.empty()) {
        const auto sub = run_subdivision(manifest, p, a.subdivide, opts, a.cox);
        const auto fi = p.data.feature_index(a.subdivide);
        for (const auto& part : sub.split.parts) {
            std::vector<ceda::FeatureCodes> codes;
            for (std::size_t k = 0; k < p.codes.size(); ++k) {
                if (k != fi) codes.push_back(p.codes[k]);
            }
            codes = ceda::restrict_codes(codes, part.indices);
            const auto cat = part.label.substr(part.label.find('=') + 1);
            for (const auto& spec : a.expand) {
                run_expansion(manifest, p, part.data, codes, spec, file_tag(part.label), {{a.subdivide, cat}},
                              a.code_threshold, ids);
            }
        }
    } else {
        for (const auto& spec : a.expand) run_expansion(manifest, p, p.data, p.codes, spec, "all", {}, a.code_threshold, ids);
    }
    if (!a.expand.empty()) manifest.write("code_ids.csv", [&](std::ostream& o) { ceda::report::write_code_ids_csv(o, ids); });

    manifest.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Categorical exploratory data analysis for right-censored survival data"};
    app.require_subcommand(1);
    std::vector<std::string> args(argv, argv + argc);

    SimulateFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic censored dataset");
    simulate->add_option("--n", sim.n, "Records")->check(CLI::Range(std::size_t{1}, std::size_t{100000000}))->capture_default_str();
    simulate->add_option("--censor-rate", sim.censor_target, "Target censoring fraction in [0, 1)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    simulate->add_option("--exp-rate", sim.censor_rate, "Explicit exponential censoring rate (skips calibration)")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--features", sim.features, "Number of features (>= 7)")->check(CLI::Range(std::size_t{7}, std::size_t{1000}))->capture_default_str();
    simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
    simulate->add_option("--out", sim.out, "Output CSV")->capture_default_str();
    simulate->add_flag("--hidden", sim.hidden, "Also write true_time and censor_time columns");
    simulate->add_option("--workers", sim.workers, "Worker threads (0 = all cores)");

    CommonFlags analyze_f;
    MfsFlags analyze_m;
    AnalyzeFlags analyze_a;
    CensorFlags analyze_c;
    auto* analyze = app.add_subcommand("analyze", "Full pipeline: MFS, MCE, optional Cox, censor test, expansion");
    add_common(analyze, analyze_f);
    add_mfs(analyze, analyze_m);
    analyze->add_option("--subdivide", analyze_a.subdivide, "Split by this feature's categories and rerun per part");
    analyze->add_flag("--cox", analyze_a.cox, "Fit a Cox PH model and add p-values");
    analyze->add_flag("--censor-test", analyze_a.censor, "Run the non-informative censoring test");
    analyze->add_option("--n-sim", analyze_c.n_sim, "Censor-test replicates")->check(CLI::Range(1, 100000000))->capture_default_str();
    analyze->add_flag("--weights", analyze_a.weights, "Write the redistribution weight matrix (n <= 5000)");
    analyze->add_flag("!--no-mce", analyze_a.mce, "Skip the MCE matrix");
    analyze->add_option("--expand", analyze_a.expand, "CE-expansion BASE:EXT[+EXT...] (repeatable)");
    analyze->add_option("--code-id-threshold", analyze_a.code_threshold, "CE threshold for code-IDs")->capture_default_str();

    CommonFlags censor_f;
    CensorFlags censor_c;
    auto* censor = app.add_subcommand("censor-test", "Test the non-informative censoring assumption");
    censor->add_option("--input,-i", censor_f.input, "Input CSV")->check(CLI::ExistingFile);
    censor->add_option("--config,-c", censor_f.config, "Column/binning config (JSON)");
    censor->add_option("--table", censor_c.table, "Summed C-vs-T table CSV (label column + cells)")->check(CLI::ExistingFile);
    add_common(censor, censor_f, false);
    censor->add_option("--n-sim", censor_c.n_sim, "Replicates")->check(CLI::Range(1, 100000000))->capture_default_str();
    censor->add_flag("--fractional", censor_c.fractional, "Randomized rounding of fractional row masses");
    censor->add_flag("--one-sided", censor_c.one_sided, "Lower-tail p-values");
    censor->add_option("--alpha", censor_c.alpha, "Verdict threshold")->check(CLI::Range(0.0, 1.0))->capture_default_str();

    CommonFlags mfs_f;
    MfsFlags mfs_m;
    auto* mfs = app.add_subcommand("mfs", "Rank feature-sets by conditional entropy");
    add_common(mfs, mfs_f);
    add_mfs(mfs, mfs_m);

    CommonFlags sub_f;
    MfsFlags sub_m;
    std::string sub_feature;
    bool sub_cox = false;
    auto* sub = app.add_subcommand("subdivide", "De-associate by one feature and rerun MFS per category");
    add_common(sub, sub_f);
    add_mfs(sub, sub_m);
    sub->add_option("--feature", sub_feature, "Feature to split on")->required();
    sub->add_flag("--cox", sub_cox, "Fit Cox PH per sub-collection");

    CommonFlags cox_f;
    std::vector<std::string> cox_features;
    auto* cox = app.add_subcommand("cox", "Fit a Cox proportional-hazards model");
    add_common(cox, cox_f);
    cox->add_option("--features", cox_features, "Features (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim, args);
        if (*analyze) return cmd_analyze(analyze_f, analyze_m, analyze_a, analyze_c, args);
        if (*censor) return cmd_censor(censor_f, censor_c, args);
        if (*mfs) return cmd_mfs(mfs_f, mfs_m, args);
        if (*sub) return cmd_subdivide(sub_f, sub_m, sub_feature, sub_cox, args);
        if (*cox) return cmd_cox(cox_f, cox_features, args);
    } catch (const ceda::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ceda::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
