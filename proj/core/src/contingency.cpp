#include "ceda/contingency.hpp"

#include "ceda/csv.hpp"
#include "ceda/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>

#include <fmt/format.h>

namespace ceda {

namespace {

std::vector<std::string> ordinal_labels(std::size_t n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i + 1));
    return out;
}

int level_count(std::span<const int> codes, int levels) {
    int max_code = -1;
    for (int c : codes) {
        if (c < 0) throw DomainError("category codes must be non-negative");
        max_code = std::max(max_code, c);
    }
    if (levels < 0) return max_code + 1;
    if (max_code >= levels) throw DomainError("category code exceeds declared level count");
    return levels;
}

std::string fmt_value(double v) { return fmt::format("{:.10g}", v); }

}  // namespace

ContingencyTable::ContingencyTable(Eigen::MatrixXd cells, std::vector<std::string> row_labels,
                                   std::vector<std::string> col_labels)
    : cells_(std::move(cells)), row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)) {
    if (!cells_.allFinite()) throw DomainError("contingency cells must be finite");
    if ((cells_.array() < 0.0).any()) throw DomainError("contingency cells must be non-negative");
    if (row_labels_.empty()) row_labels_ = ordinal_labels(rows());
    if (col_labels_.empty()) col_labels_ = ordinal_labels(cols());
    if (row_labels_.size() != rows() || col_labels_.size() != cols()) {
        throw DomainError("contingency labels do not match table shape");
    }
}

ContingencyTable ContingencyTable::transpose() const {
    return ContingencyTable(cells_.transpose(), col_labels_, row_labels_);
}

ContingencyTable ContingencyTable::operator+(const ContingencyTable& other) const {
    if (rows() != other.rows() || cols() != other.cols()) throw DomainError("table shapes differ");
    return ContingencyTable(cells_ + other.cells_, row_labels_, col_labels_);
}

CompositeCodes fuse_categories(std::span<const std::vector<int>> members) {
    if (members.empty()) throw DomainError("fuse_categories: no members");
    const std::size_t n = members.front().size();
    std::vector<std::uint64_t> radix(members.size());
    for (std::size_t m = 0; m < members.size(); ++m) {
        if (members[m].size() != n) throw DomainError("fuse_categories: members differ in length");
        radix[m] = static_cast<std::uint64_t>(level_count(members[m], -1));
        if (radix[m] == 0) radix[m] = 1;
    }
    // Mixed-radix keys with the first member most significant reproduce
    // lexicographic tuple order.
    std::vector<std::uint64_t> keys(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t key = 0;
        for (std::size_t m = 0; m < members.size(); ++m) {
            key = key * radix[m] + static_cast<std::uint64_t>(members[m][i]);
        }
        keys[i] = key;
    }
    std::vector<std::uint64_t> distinct = keys;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    CompositeCodes out;
    out.codes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.codes[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), keys[i]) - distinct.begin());
    }
    for (auto key : distinct) {
        std::vector<int> tuple(members.size());
        for (std::size_t m = members.size(); m-- > 0;) {
            tuple[m] = static_cast<int>(key % radix[m]);
            key /= radix[m];
        }
        std::string label = "(";
        for (std::size_t m = 0; m < tuple.size(); ++m) {
            if (m) label += ",";
            label += std::to_string(tuple[m] + 1);
        }
        label += ")";
        out.labels.push_back(std::move(label));
        out.tuples.push_back(std::move(tuple));
    }
    return out;
}

CompositeCodes fuse_features(std::span<const FeatureCodes> members) {
    std::vector<std::vector<int>> codes;
    codes.reserve(members.size());
    for (const auto& m : members) codes.push_back(m.codes);
    return fuse_categories(codes);
}

ContingencyTable table_from_weights(const WeightMatrix& weights, std::span<const int> row_codes,
                                    const BinningScheme& time_scheme, int levels) {
    if (row_codes.size() != weights.rows()) throw DomainError("table_from_weights: row codes misaligned with W rows");
    levels = level_count(row_codes, levels);
    Eigen::MatrixXd cells = Eigen::MatrixXd::Zero(levels, static_cast<Eigen::Index>(time_scheme.bin_count()));
    std::vector<Eigen::Index> col_bin(weights.cols());
    for (std::size_t j = 0; j < weights.cols(); ++j) {
        col_bin[j] = static_cast<Eigen::Index>(time_scheme.bin_of(weights.col_times[j]));
    }
    for (std::size_t r = 0; r < weights.rows(); ++r) {
        for (std::size_t j = 0; j < weights.cols(); ++j) {
            cells(row_codes[r], col_bin[j]) +=
                weights.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
        }
    }
    return ContingencyTable(std::move(cells), {}, time_scheme.labels());
}

ContingencyTable table_from_binned(const BinnedWeights& binned, std::span<const int> codes, int levels,
                                   std::vector<std::string> row_labels) {
    if (codes.size() != binned.rows()) throw DomainError("table_from_binned: codes misaligned with records");
    levels = level_count(codes, levels);
    Eigen::MatrixXd cells = Eigen::MatrixXd::Zero(levels, binned.mass.cols());
    for (std::size_t i = 0; i < codes.size(); ++i) {
        cells.row(codes[i]) += binned.mass.row(static_cast<Eigen::Index>(i));
    }
    return ContingencyTable(std::move(cells), std::move(row_labels), binned.time_scheme.labels());
}

ContingencyTable table_plain(std::span<const int> x, std::span<const int> y, int x_levels, int y_levels) {
    if (x.size() != y.size()) throw DomainError("table_plain: length mismatch");
    x_levels = level_count(x, x_levels);
    y_levels = level_count(y, y_levels);
    Eigen::MatrixXd cells = Eigen::MatrixXd::Zero(x_levels, y_levels);
    for (std::size_t i = 0; i < x.size(); ++i) cells(x[i], y[i]) += 1.0;
    return ContingencyTable(std::move(cells));
}

CensorCrossTables censor_cross_table(const Dataset& dataset, const BinningScheme& time_scheme) {
    const auto k = static_cast<Eigen::Index>(time_scheme.bin_count());
    auto tabulate = [&](const WeightMatrix& w) {
        Eigen::MatrixXd cells = Eigen::MatrixXd::Zero(k, k);
        std::vector<Eigen::Index> col_bin(w.cols());
        for (std::size_t j = 0; j < w.cols(); ++j) {
            col_bin[j] = static_cast<Eigen::Index>(time_scheme.bin_of(w.col_times[j]));
        }
        for (std::size_t r = 0; r < w.rows(); ++r) {
            const auto row_bin = static_cast<Eigen::Index>(time_scheme.bin_of(w.row_times[r]));
            for (std::size_t j = 0; j < w.cols(); ++j) {
                cells(row_bin, col_bin[j]) += w.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
            }
        }
        return cells;
    };
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    for (const auto& l : time_scheme.labels()) {
        row_labels.push_back("C" + l);
        col_labels.push_back("T" + l);
    }
    const auto censored = tabulate(build_cross_weight_matrix(dataset, CrossDirection::censored_rows));
    // Rows are event bins here; transpose so rows index censoring bins.
    const Eigen::MatrixXd events = tabulate(build_cross_weight_matrix(dataset, CrossDirection::event_rows)).transpose();

    CensorCrossTables out{
        ContingencyTable(censored + events, row_labels, col_labels),
        ContingencyTable(censored, row_labels, col_labels),
        ContingencyTable(events, row_labels, col_labels),
    };
    return out;
}

void write_table_csv(std::ostream& out, const ContingencyTable& table) {
    std::vector<std::string> header{""};
    header.insert(header.end(), table.col_labels().begin(), table.col_labels().end());
    csv::write_row(out, header);
    for (std::size_t r = 0; r < table.rows(); ++r) {
        std::vector<std::string> row{table.row_labels()[r]};
        for (std::size_t c = 0; c < table.cols(); ++c) row.push_back(fmt_value(table(r, c)));
        csv::write_row(out, row);
    }
}

void write_table_plot_data(std::ostream& out, const ContingencyTable& table, const std::string& series) {
    csv::write_row(out, {"series", "row", "col", "value"});
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.cols(); ++c) {
            csv::write_row(out, {series, table.row_labels()[r], table.col_labels()[c], fmt_value(table(r, c))});
        }
    }
}

}  // namespace ceda
