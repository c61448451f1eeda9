#include "ceda/redistribution.hpp"

#include "ceda/error.hpp"

#include <algorithm>
#include <numeric>

namespace ceda {

namespace {

// Physical ordering shared by every construction: ascending time, events
// before censorings at ties, then input order.
std::vector<std::size_t> sorted_positions(std::span<const double> y, std::span<const int> delta) {
    std::vector<std::size_t> order(y.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (y[a] != y[b]) return y[a] < y[b];
        return delta[a] > delta[b];
    });
    return order;
}

// Cascade over one ordered status vector whose last entry is 1. Fills rows
// for the requested positions (in order) over the columns where status is 1.
RowMatrix cascade(std::span<const int> status, std::span<const std::size_t> row_positions,
                  std::vector<std::size_t>& col_positions) {
    const std::size_t n = status.size();
    std::vector<std::size_t> col_of(n, 0);
    col_positions.clear();
    for (std::size_t p = 0; p < n; ++p) {
        if (status[p] == 1) {
            col_of[p] = col_positions.size();
            col_positions.push_back(p);
        }
    }
    RowMatrix w = RowMatrix::Zero(static_cast<Eigen::Index>(row_positions.size()),
                                  static_cast<Eigen::Index>(col_positions.size()));
    for (std::size_t r = 0; r < row_positions.size(); ++r) {
        const std::size_t i = row_positions[r];
        const auto row = static_cast<Eigen::Index>(r);
        if (status[i] == 1) {
            w(row, static_cast<Eigen::Index>(col_of[i])) = 1.0;
            continue;
        }
        // `share` is what every later point currently holds from this row.
        double share = 1.0 / static_cast<double>(n - 1 - i);
        for (std::size_t q = i + 1; q < n; ++q) {
            const double held = share;
            if (status[q] == 1) {
                w(row, static_cast<Eigen::Index>(col_of[q])) = held;
            } else {
                share += held / static_cast<double>(n - 1 - q);
            }
        }
    }
    return w;
}

}  // namespace

OrderedSample order_sample(std::span<const double> y, std::span<const int> delta) {
    if (y.size() != delta.size()) throw DomainError("time and status vectors differ in length");
    if (y.empty()) throw DomainError("empty dataset");
    OrderedSample s;
    s.order = sorted_positions(y, delta);
    for (auto idx : s.order) {
        s.y.push_back(y[idx]);
        s.observed_delta.push_back(delta[idx]);
    }
    s.delta = s.observed_delta;
    if (s.delta.back() == 0) {
        s.delta.back() = 1;
        s.promoted = s.size() - 1;
    }
    return s;
}

OrderedSample order_sample(const Dataset& dataset) {
    const auto y = dataset.times();
    const auto d = dataset.statuses();
    return order_sample(y, d);
}

double StepFunction::operator()(double t) const {
    auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
    if (it == jump_times.begin()) return 1.0;
    return values[static_cast<std::size_t>(it - jump_times.begin()) - 1];
}

double StepFunction::left_limit(double t) const {
    auto it = std::lower_bound(jump_times.begin(), jump_times.end(), t);
    if (it == jump_times.begin()) return 1.0;
    return values[static_cast<std::size_t>(it - jump_times.begin()) - 1];
}

std::vector<double> km_position_masses(const OrderedSample& sample) {
    const std::size_t n = sample.size();
    std::vector<double> mass(n, 0.0);
    double surv = 1.0;
    for (std::size_t p = 0; p < n; ++p) {
        if (sample.delta[p] == 1) {
            const double jump = surv / static_cast<double>(n - p);
            mass[p] = jump;
            surv = (p + 1 == n) ? 0.0 : surv - jump;
        }
    }
    return mass;
}

StepFunction km_estimate(const Dataset& dataset) {
    if (dataset.empty()) throw DomainError("km_estimate: empty dataset");
    const auto sample = order_sample(dataset);
    const std::size_t n = sample.size();
    StepFunction sf;
    double surv = 1.0;
    for (std::size_t p = 0; p < n; ++p) {
        if (sample.delta[p] != 1) continue;
        surv *= 1.0 - 1.0 / static_cast<double>(n - p);
        if (!sf.jump_times.empty() && sf.jump_times.back() == sample.y[p]) {
            sf.values.back() = surv;
        } else {
            sf.jump_times.push_back(sample.y[p]);
            sf.values.push_back(surv);
        }
    }
    return sf;
}

WeightMatrix build_weight_matrix(const Dataset& dataset) {
    if (dataset.empty()) throw DomainError("build_weight_matrix: empty dataset");
    const auto sample = order_sample(dataset);
    std::vector<std::size_t> rows(sample.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});

    WeightMatrix w;
    std::vector<std::size_t> col_positions;
    w.weights = cascade(sample.delta, rows, col_positions);
    for (std::size_t p = 0; p < sample.size(); ++p) {
        w.row_records.push_back(sample.order[p]);
        w.row_ids.push_back(dataset[sample.order[p]].id);
        w.row_times.push_back(sample.y[p]);
        w.row_delta.push_back(sample.delta[p]);
    }
    for (auto p : col_positions) {
        w.col_records.push_back(sample.order[p]);
        w.col_times.push_back(sample.y[p]);
    }
    return w;
}

WeightMatrix build_cross_weight_matrix(const Dataset& dataset, CrossDirection direction) {
    if (dataset.n_censored() == 0) throw DomainError("cross weight matrix: no censored records");
    if (dataset.n_uncensored() == 0) throw DomainError("cross weight matrix: no uncensored records");
    const auto sample = order_sample(dataset);
    const std::size_t n = sample.size();

    // Status along the column axis: events for censored_rows, censorings for
    // event_rows. The largest point always closes the cascade.
    std::vector<int> axis(n);
    const int row_status = direction == CrossDirection::censored_rows ? 0 : 1;
    for (std::size_t p = 0; p < n; ++p) {
        axis[p] = direction == CrossDirection::censored_rows ? sample.observed_delta[p]
                                                             : 1 - sample.observed_delta[p];
    }
    axis.back() = 1;

    std::vector<std::size_t> rows;
    for (std::size_t p = 0; p < n; ++p) {
        if (sample.observed_delta[p] == row_status) rows.push_back(p);
    }

    WeightMatrix w;
    std::vector<std::size_t> col_positions;
    w.weights = cascade(axis, rows, col_positions);
    for (auto p : rows) {
        w.row_records.push_back(sample.order[p]);
        w.row_ids.push_back(dataset[sample.order[p]].id);
        w.row_times.push_back(sample.y[p]);
        w.row_delta.push_back(sample.observed_delta[p]);
    }
    for (auto p : col_positions) {
        w.col_records.push_back(sample.order[p]);
        w.col_times.push_back(sample.y[p]);
    }
    return w;
}

WeightRowGenerator::WeightRowGenerator(OrderedSample sample) : sample_(std::move(sample)) {
    const std::size_t n = sample_.size();
    mass_ = km_position_masses(sample_);
    tail_.assign(n, 0.0);
    for (std::size_t p = n - 1; p > 0; --p) tail_[p - 1] = tail_[p] + mass_[p];
    col_of_position_.assign(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
        if (sample_.delta[p] == 1) {
            col_of_position_[p] = col_positions_.size();
            col_positions_.push_back(p);
        }
    }
}

void WeightRowGenerator::row(std::size_t position, std::vector<double>& out) const {
    out.assign(col_positions_.size(), 0.0);
    if (sample_.delta[position] == 1) {
        out[col_of_position_[position]] = 1.0;
        return;
    }
    const double remaining = tail_[position];
    auto first = std::upper_bound(col_positions_.begin(), col_positions_.end(), position);
    for (auto it = first; it != col_positions_.end(); ++it) {
        out[static_cast<std::size_t>(it - col_positions_.begin())] = mass_[*it] / remaining;
    }
}

BinnedWeights bin_weights(const Dataset& dataset, const BinningScheme& time_scheme) {
    if (dataset.empty()) throw DomainError("bin_weights: empty dataset");
    const auto sample = order_sample(dataset);
    const auto mass = km_position_masses(sample);
    const std::size_t n = sample.size();
    const std::size_t k = time_scheme.bin_count();

    BinnedWeights out;
    out.time_scheme = time_scheme;
    out.mass = RowMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
    out.row_delta.assign(n, 0);

    // Walk right to left keeping the per-bin mass of all later events.
    std::vector<double> later(k, 0.0);
    for (std::size_t p = n; p-- > 0;) {
        const auto record = static_cast<Eigen::Index>(sample.order[p]);
        out.row_delta[sample.order[p]] = sample.delta[p];
        if (sample.delta[p] == 1) {
            const auto bin = time_scheme.bin_of(sample.y[p]);
            out.mass(record, static_cast<Eigen::Index>(bin)) = 1.0;
            later[bin] += mass[p];
        } else {
            const double total = std::accumulate(later.begin(), later.end(), 0.0);
            for (std::size_t b = 0; b < k; ++b) {
                out.mass(record, static_cast<Eigen::Index>(b)) = later[b] / total;
            }
        }
    }
    return out;
}

BinnedWeights bin_weights(const WeightMatrix& weights, const BinningScheme& time_scheme, std::size_t record_count) {
    const std::size_t k = time_scheme.bin_count();
    BinnedWeights out;
    out.time_scheme = time_scheme;
    out.mass = RowMatrix::Zero(static_cast<Eigen::Index>(record_count), static_cast<Eigen::Index>(k));
    out.row_delta.assign(record_count, 0);
    std::vector<std::size_t> col_bin(weights.cols());
    for (std::size_t j = 0; j < weights.cols(); ++j) col_bin[j] = time_scheme.bin_of(weights.col_times[j]);
    for (std::size_t r = 0; r < weights.rows(); ++r) {
        const std::size_t record = weights.row_records.at(r);
        if (record >= record_count) throw DomainError("bin_weights: row record out of range");
        out.row_delta[record] = weights.row_delta[r];
        for (std::size_t j = 0; j < weights.cols(); ++j) {
            out.mass(static_cast<Eigen::Index>(record), static_cast<Eigen::Index>(col_bin[j])) +=
                weights.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

}  // namespace ceda
