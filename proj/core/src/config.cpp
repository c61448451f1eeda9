#include "ceda/config.hpp"

#include "ceda/csv.hpp"
#include "ceda/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

namespace ceda {

namespace {

using nlohmann::json;

bool is_missing(const std::string& s) {
    std::string t;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return t.empty() || t == "na" || t == "nan" || t == "null";
}

std::optional<double> to_number(const std::string& s) {
    auto begin = s.data();
    auto end = s.data() + s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(*(end - 1)))) --end;
    if (begin < end && *begin == '+') ++begin;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key) || j[key].is_null()) return fallback;
    return j[key].get<T>();
}

std::string fmt_number(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

std::string time_method_name(TimeBinMethod method) {
    switch (method) {
        case TimeBinMethod::equal_width: return "equal_width";
        case TimeBinMethod::km_quantile: return "km_quantile";
        case TimeBinMethod::explicit_edges: return "explicit";
    }
    return "equal_width";
}

TimeBinMethod parse_time_method(std::string_view name) {
    std::string n(name);
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "equal_width") return TimeBinMethod::equal_width;
    if (n == "km_quantile") return TimeBinMethod::km_quantile;
    if (n == "explicit" || n == "explicit_edges") return TimeBinMethod::explicit_edges;
    throw ConfigError("unknown time binning method '" + std::string(name) + "'");
}

AnalysisConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    AnalysisConfig cfg;
    try {
        cfg.version = get_or<int>(j, "version", kConfigVersion);
        if (cfg.version != kConfigVersion) {
            throw ConfigError(fmt::format("unsupported config version {} (expected {})", cfg.version, kConfigVersion));
        }
        if (!j.contains("columns")) throw ConfigError("config lacks a 'columns' section");
        const auto& c = j["columns"];
        cfg.columns.id = get_or<std::string>(c, "id", "");
        cfg.columns.time = get_or<std::string>(c, "time", "");
        cfg.columns.status = get_or<std::string>(c, "status", "");
        if (cfg.columns.time.empty()) throw ConfigError("config must name the time column");
        if (cfg.columns.status.empty()) throw ConfigError("config must name the status column");
        cfg.columns.features = get_or<std::vector<std::string>>(c, "features", {});
        cfg.columns.categorical = get_or<std::vector<std::string>>(c, "categorical", {});
        if (j.contains("binning")) {
            const auto& b = j["binning"];
            const int bins = get_or<int>(b, "covariate_bins", 4);
            if (bins < 2) throw ConfigError("covariate_bins must be >= 2");
            cfg.covariates.bins = static_cast<std::size_t>(bins);
            cfg.covariates.explicit_edges = get_or<std::map<std::string, std::vector<double>>>(b, "edges", {});
            if (b.contains("time")) {
                const auto& t = b["time"];
                cfg.time.method = parse_time_method(get_or<std::string>(t, "method", "equal_width"));
                const int tb = get_or<int>(t, "bins", 10);
                if (tb < 2) throw ConfigError("time bins must be >= 2");
                cfg.time.bins = static_cast<std::size_t>(tb);
                cfg.time.edges = get_or<std::vector<double>>(t, "edges", {});
                if (cfg.time.method == TimeBinMethod::explicit_edges && cfg.time.edges.size() < 3) {
                    throw ConfigError("explicit time binning needs at least 3 edges");
                }
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config has a field of the wrong type: ") + e.what());
    }
    return cfg;
}

AnalysisConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const AnalysisConfig& cfg) {
    json j;
    j["version"] = cfg.version;
    j["columns"] = {{"id", cfg.columns.id},
                    {"time", cfg.columns.time},
                    {"status", cfg.columns.status},
                    {"features", cfg.columns.features},
                    {"categorical", cfg.columns.categorical}};
    j["binning"] = {{"covariate_bins", cfg.covariates.bins},
                    {"edges", cfg.covariates.explicit_edges},
                    {"time", {{"method", time_method_name(cfg.time.method)}, {"bins", cfg.time.bins}, {"edges", cfg.time.edges}}}};
    return j.dump(2);
}

Dataset ingest_csv(std::istream& in, const ColumnConfig& columns) {
    const auto table = csv::read(in);
    auto require = [&](const std::string& name, const char* role) {
        const auto idx = table.column(name);
        if (idx == csv::Table::npos) throw ConfigError(fmt::format("{} column '{}' not found in CSV header", role, name));
        return idx;
    };
    const auto time_col = require(columns.time, "time");
    const auto status_col = require(columns.status, "status");
    std::optional<std::size_t> id_col;
    if (!columns.id.empty()) id_col = require(columns.id, "id");

    std::vector<std::string> features = columns.features;
    if (features.empty()) {
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (c == time_col || c == status_col || (id_col && c == *id_col)) continue;
            features.push_back(table.header[c]);
        }
    }
    std::vector<std::size_t> feature_cols;
    std::vector<FeatureKind> kinds;
    const std::set<std::string> categorical(columns.categorical.begin(), columns.categorical.end());
    for (const auto& name : categorical) {
        if (std::find(features.begin(), features.end(), name) == features.end()) {
            throw ConfigError("categorical column '" + name + "' is not among the features");
        }
    }
    for (const auto& f : features) {
        feature_cols.push_back(require(f, "feature"));
        kinds.push_back(categorical.count(f) ? FeatureKind::categorical : FeatureKind::continuous);
    }

    std::vector<std::size_t> missing;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        bool bad = is_missing(row[time_col]) || is_missing(row[status_col]);
        for (auto c : feature_cols) bad = bad || is_missing(row[c]);
        if (bad) missing.push_back(r + 1);
    }
    if (!missing.empty()) throw MissingValueError(std::move(missing));

    // Label encoding for categorical columns whose values are not all numeric.
    std::vector<std::map<std::string, double>> label_codes(features.size());
    for (std::size_t f = 0; f < features.size(); ++f) {
        if (kinds[f] != FeatureKind::categorical) continue;
        bool numeric = true;
        std::set<std::string> labels;
        for (const auto& row : table.rows) {
            numeric = numeric && to_number(row[feature_cols[f]]).has_value();
            labels.insert(row[feature_cols[f]]);
        }
        if (numeric) continue;
        double code = 1.0;
        for (const auto& l : labels) label_codes[f][l] = code++;
    }

    std::vector<SurvivalRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        SurvivalRecord rec;
        rec.id = id_col ? row[*id_col] : std::to_string(r + 1);
        const auto y = to_number(row[time_col]);
        if (!y || *y < 0.0) throw ParseError(r + 1, fmt::format("time '{}' is not a non-negative number", row[time_col]));
        rec.y = *y;
        const auto d = to_number(row[status_col]);
        if (!d || (*d != 0.0 && *d != 1.0)) throw ParseError(r + 1, fmt::format("status '{}' is not 0 or 1", row[status_col]));
        rec.delta = static_cast<int>(*d);
        for (std::size_t f = 0; f < features.size(); ++f) {
            const auto& cell = row[feature_cols[f]];
            if (!label_codes[f].empty()) {
                rec.covariates.push_back(label_codes[f].at(cell));
                continue;
            }
            const auto v = to_number(cell);
            if (!v) throw ParseError(r + 1, fmt::format("feature '{}' value '{}' is not numeric", features[f], cell));
            rec.covariates.push_back(*v);
        }
        records.push_back(std::move(rec));
    }
    return Dataset(std::move(records), std::move(features), std::move(kinds));
}

Dataset ingest_csv(const std::string& path, const ColumnConfig& columns) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file '" + path + "'");
    return ingest_csv(in, columns);
}

void write_dataset_csv(std::ostream& out, const Dataset& dataset, const std::string& time_name,
                       const std::string& status_name) {
    std::vector<std::string> header{"id", time_name, status_name};
    header.insert(header.end(), dataset.feature_names().begin(), dataset.feature_names().end());
    csv::write_row(out, header);
    for (const auto& r : dataset.records()) {
        std::vector<std::string> row{r.id, fmt_number(r.y), std::to_string(r.delta)};
        for (double v : r.covariates) row.push_back(fmt_number(v));
        csv::write_row(out, row);
    }
}

}  // namespace ceda
