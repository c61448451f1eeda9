#pragma once

#include "ceda/binning.hpp"
#include "ceda/redistribution.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ceda {

// Real-valued cross-tabulation; rows are the conditioning variable, columns
// the response.
class ContingencyTable {
public:
    ContingencyTable() = default;
    // Throws DomainError on negative or non-finite cells or label mismatch.
    // Empty label vectors are filled with 1-based ordinals.
    ContingencyTable(Eigen::MatrixXd cells, std::vector<std::string> row_labels = {},
                     std::vector<std::string> col_labels = {});

    std::size_t rows() const noexcept { return static_cast<std::size_t>(cells_.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(cells_.cols()); }
    const Eigen::MatrixXd& cells() const noexcept { return cells_; }
    double operator()(std::size_t r, std::size_t c) const {
        return cells_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
    const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

    double total() const { return cells_.sum(); }
    Eigen::VectorXd row_sums() const { return cells_.rowwise().sum(); }
    Eigen::VectorXd col_sums() const { return cells_.colwise().sum().transpose(); }

    ContingencyTable transpose() const;
    ContingencyTable operator+(const ContingencyTable& other) const;

private:
    Eigen::MatrixXd cells_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
};

// Several categorical vectors fused into one: each observed tuple is a level,
// levels ordered lexicographically by tuple.
struct CompositeCodes {
    std::vector<int> codes;
    std::vector<std::vector<int>> tuples;  // tuple of member codes per level
    std::vector<std::string> labels;       // "(1,3)" style, 1-based
    int levels() const noexcept { return static_cast<int>(tuples.size()); }
};

CompositeCodes fuse_categories(std::span<const std::vector<int>> members);
CompositeCodes fuse_features(std::span<const FeatureCodes> members);

// Rows: categories (codes aligned to W rows), columns: time bins of W's
// column times. Cell = total redistributed weight.
ContingencyTable table_from_weights(const WeightMatrix& weights, std::span<const int> row_codes,
                                    const BinningScheme& time_scheme, int levels = -1);

// Same table from pre-grouped weights; codes are in dataset record order.
ContingencyTable table_from_binned(const BinnedWeights& binned, std::span<const int> codes, int levels = -1,
                                   std::vector<std::string> row_labels = {});

// Integer cross-counts of two categorical vectors.
ContingencyTable table_plain(std::span<const int> x, std::span<const int> y, int x_levels = -1,
                             int y_levels = -1);

// The censoring-vs-event table: rows are censoring-time bins, columns event-
// time bins. `from_censored` has zeros below the diagonal, `from_events`
// above it; `summed` is their cellwise sum.
struct CensorCrossTables {
    ContingencyTable summed;
    ContingencyTable from_censored;
    ContingencyTable from_events;
};

CensorCrossTables censor_cross_table(const Dataset& dataset, const BinningScheme& time_scheme);

// Labeled CSV matrix and long-form (row, col, value) plot data.
void write_table_csv(std::ostream& out, const ContingencyTable& table);
void write_table_plot_data(std::ostream& out, const ContingencyTable& table, const std::string& series = "table");

}  // namespace ceda
