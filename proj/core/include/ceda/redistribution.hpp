#pragma once

#include "ceda/binning.hpp"
#include "ceda/dataset.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ceda {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Records sorted by ascending time. At equal times events precede
// censorings, then input order. If the largest time is censored it is
// promoted to an event (`promoted` holds its position).
struct OrderedSample {
    std::vector<std::size_t> order;  // record index at each position
    std::vector<double> y;
    std::vector<int> delta;           // after promotion
    std::vector<int> observed_delta;  // as recorded
    std::optional<std::size_t> promoted;

    std::size_t size() const noexcept { return y.size(); }
};

OrderedSample order_sample(std::span<const double> y, std::span<const int> delta);
OrderedSample order_sample(const Dataset& dataset);

// Right-continuous survival step function starting at 1.
struct StepFunction {
    std::vector<double> jump_times;  // ascending, distinct
    std::vector<double> values;      // S just after each jump

    double operator()(double t) const;  // S(t)
    double left_limit(double t) const;  // S(t-)
};

// Product-limit estimate after the largest-censored promotion.
StepFunction km_estimate(const Dataset& dataset);

// Kaplan-Meier probability mass at each ordered position (zero at censored
// positions); sums to 1.
std::vector<double> km_position_masses(const OrderedSample& sample);

// Redistribution-to-the-right weights. Rows are subjects in sample order,
// columns the uncensored positions in sample order.
struct WeightMatrix {
    std::vector<std::size_t> row_records;
    std::vector<std::string> row_ids;
    std::vector<double> row_times;
    std::vector<int> row_delta;
    std::vector<std::size_t> col_records;
    std::vector<double> col_times;
    RowMatrix weights;

    std::size_t rows() const noexcept { return static_cast<std::size_t>(weights.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(weights.cols()); }
};

// Dense matrix via the left-to-right cascade: each censored point splits its
// current mass equally over every later point; later censored points forward
// what they received.
WeightMatrix build_weight_matrix(const Dataset& dataset);

enum class CrossDirection {
    censored_rows,  // rows: censoring times, columns: event times
    event_rows,     // rows: event times, columns: censoring times
};

// Cross matrices for the censoring test. censored_rows keeps the originally
// censored rows of build_weight_matrix. event_rows swaps the roles of the two
// statuses (on the observed statuses) and runs the same cascade.
WeightMatrix build_cross_weight_matrix(const Dataset& dataset, CrossDirection direction);

// Closed-form rows of the redistribution matrix without materializing it: a
// censored row at position i carries Kaplan-Meier mass of later events
// divided by the mass remaining after i.
class WeightRowGenerator {
public:
    explicit WeightRowGenerator(OrderedSample sample);

    const OrderedSample& sample() const noexcept { return sample_; }
    std::size_t column_count() const noexcept { return col_positions_.size(); }
    const std::vector<std::size_t>& column_positions() const noexcept { return col_positions_; }

    // Fills `out` (resized to column_count()) with the row at sample position.
    void row(std::size_t position, std::vector<double>& out) const;

private:
    OrderedSample sample_;
    std::vector<double> mass_;
    std::vector<double> tail_;  // tail_[p] = sum of mass_ over positions > p
    std::vector<std::size_t> col_positions_;
    std::vector<std::size_t> col_of_position_;
};

// Weight matrix grouped along its column axis by a time scheme: one row per
// record in dataset order, one column per time bin. This is the input for
// every weighted contingency table.
struct BinnedWeights {
    RowMatrix mass;
    BinningScheme time_scheme;
    std::vector<int> row_delta;  // after promotion, dataset order

    std::size_t rows() const noexcept { return static_cast<std::size_t>(mass.rows()); }
    std::size_t bins() const noexcept { return static_cast<std::size_t>(mass.cols()); }
};

// O(n * bins) closed-form route; never builds the n x n_u matrix.
BinnedWeights bin_weights(const Dataset& dataset, const BinningScheme& time_scheme);

// Groups the columns of an explicit matrix (rows mapped back to dataset order
// through row_records; `record_count` is the dataset size).
BinnedWeights bin_weights(const WeightMatrix& weights, const BinningScheme& time_scheme, std::size_t record_count);

}  // namespace ceda
