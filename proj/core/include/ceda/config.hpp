#pragma once

#include "ceda/binning.hpp"
#include "ceda/dataset.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ceda {

// Column roles of an input CSV. An empty feature list selects every column
// not used as id, time or status.
struct ColumnConfig {
    std::string id;  // optional; row numbers are used when empty
    std::string time = "time";
    std::string status = "status";
    std::vector<std::string> features;
    std::vector<std::string> categorical;
};

struct AnalysisConfig {
    int version = 1;
    ColumnConfig columns;
    CovariateBinning covariates;
    TimeBinning time;
};

inline constexpr int kConfigVersion = 1;

// JSON config:
//   {"version": 1,
//    "columns": {"id": "id", "time": "y", "status": "delta",
//                "features": ["V1", ...], "categorical": ["APOE4"]},
//    "binning": {"covariate_bins": 4, "edges": {"V1": [0, 0.5, 1]},
//                "time": {"method": "equal_width" | "km_quantile" | "explicit",
//                         "bins": 10, "edges": [...]}}}
// Unknown top-level keys are ignored. Throws ConfigError on malformed input
// or an unsupported version.
AnalysisConfig parse_config(std::string_view json_text);
AnalysisConfig load_config(const std::string& path);
std::string config_to_json(const AnalysisConfig& config);

// Reads selected columns into a Dataset in file order. Throws ConfigError for
// absent columns, MissingValueError listing rows with empty/NA cells, and
// ParseError (with the 1-based data row) for non-numeric values. Categorical
// columns holding labels are encoded 1..L in sorted label order.
Dataset ingest_csv(std::istream& in, const ColumnConfig& columns);
Dataset ingest_csv(const std::string& path, const ColumnConfig& columns);

// Writes id, time, status and every feature, readable by ingest_csv.
void write_dataset_csv(std::ostream& out, const Dataset& dataset, const std::string& time_name = "time",
                       const std::string& status_name = "status");

std::string time_method_name(TimeBinMethod method);
TimeBinMethod parse_time_method(std::string_view name);

}  // namespace ceda
