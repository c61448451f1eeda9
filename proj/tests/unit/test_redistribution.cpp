#include <ceda/error.hpp>
#include <ceda/redistribution.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "test_support.hpp"

using namespace ceda;
namespace {

std::pair<std::vector<double>, std::vector<int>> random_sample(std::mt19937_64& rng, std::size_t n, double p_censor,
                                                               int distinct_times) {
    std::uniform_int_distribution<int> t(1, distinct_times);
    std::bernoulli_distribution c(p_censor);
    std::vector<double> y(n);
    std::vector<int> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = t(rng);
        d[i] = c(rng) ? 0 : 1;
    }
    return {y, d};
}

}  // namespace

TEST(Ordering, EventsBeforeCensoringsAtTiesThenInputOrder) {
    const std::vector<double> y{5, 3, 3, 3, 1};
    const std::vector<int> d{0, 0, 1, 0, 1};
    const auto s = order_sample(y, d);
    EXPECT_EQ(s.order, (std::vector<std::size_t>{4, 2, 1, 3, 0}));
    EXPECT_EQ(s.observed_delta.back(), 0);
    EXPECT_EQ(s.delta.back(), 1);
    ASSERT_TRUE(s.promoted.has_value());
    EXPECT_EQ(*s.promoted, 4u);
}

TEST(KaplanMeier, HandEvaluatedProduct) {
    const auto km = km_estimate(testkit::make_dataset({1, 2, 3}, {1, 0, 1}));
    ASSERT_EQ(km.jump_times.size(), 2u);
    EXPECT_NEAR(km(1.0), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(km(2.5), 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(km(3.0), 0.0, 1e-15);
    EXPECT_NEAR(km(0.5), 1.0, 0.0);
    EXPECT_NEAR(km.left_limit(3.0), 2.0 / 3.0, 1e-15);
}

TEST(KaplanMeier, LargestCensoredIsPromoted) {
    const auto km = km_estimate(testkit::make_dataset({1, 2}, {1, 0}));
    EXPECT_NEAR(km(2.0), 0.0, 1e-15);
}

TEST(KaplanMeier, EmptyDatasetThrows) { EXPECT_THROW(km_estimate(Dataset{}), DomainError); }

TEST(KaplanMeier, StepFunctionInvariants) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto [y, d] = random_sample(rng, 40, 0.4, 15);
        const auto km = km_estimate(testkit::make_dataset(y, d));
        double prev = 1.0;
        for (std::size_t i = 0; i < km.values.size(); ++i) {
            EXPECT_LE(km.values[i], prev + 1e-15);
            EXPECT_GE(km.values[i], -1e-15);
            if (i) EXPECT_LT(km.jump_times[i - 1], km.jump_times[i]);
            prev = km.values[i];
        }
        EXPECT_NEAR(km.values.back(), 0.0, 1e-12);
    }
}

TEST(Redistribution, TenPointInstanceFractions) {
    const auto w = build_weight_matrix(testkit::ten_point_instance());
    ASSERT_EQ(w.rows(), 10u);
    ASSERT_EQ(w.cols(), 7u);
    // Columns are positions 1,2,4,5,7,9,10.
    auto at = [&](int row_pos, int col) { return w.weights(row_pos - 1, col); };
    const double tol = 1e-12;
    EXPECT_NEAR(at(3, 2), 1.0 / 7, tol);
    EXPECT_NEAR(at(3, 3), 1.0 / 7, tol);
    EXPECT_NEAR(at(3, 4), 5.0 / 28, tol);
    EXPECT_NEAR(at(3, 5), 15.0 / 56, tol);
    EXPECT_NEAR(at(3, 6), 15.0 / 56, tol);
    EXPECT_NEAR(at(6, 4), 1.0 / 4, tol);
    EXPECT_NEAR(at(6, 5), 3.0 / 8, tol);
    EXPECT_NEAR(at(6, 6), 3.0 / 8, tol);
    EXPECT_NEAR(at(8, 5), 1.0 / 2, tol);
    EXPECT_NEAR(at(8, 6), 1.0 / 2, tol);
    EXPECT_NEAR(at(3, 0) + at(3, 1) + at(6, 3) + at(8, 4), 0.0, 0.0);
}

TEST(Redistribution, KmMassesEqualColumnSumsOverN) {
    const auto sample = order_sample(testkit::ten_point_instance());
    const auto mass = km_position_masses(sample);
    const auto w = build_weight_matrix(testkit::ten_point_instance());
    const Eigen::VectorXd col = w.weights.colwise().sum().transpose() / 10.0;
    std::size_t c = 0;
    for (std::size_t p = 0; p < sample.size(); ++p) {
        if (sample.delta[p] == 1) EXPECT_NEAR(mass[p], col[static_cast<Eigen::Index>(c++)], 1e-15);
        else EXPECT_EQ(mass[p], 0.0);
    }
}

TEST(Redistribution, CascadeMatchesExactRationalOracle) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 11);
        auto [y, d] = random_sample(rng, n, 0.45, 2);
        std::iota(y.begin(), y.end(), 1.0);
        std::shuffle(y.begin(), y.end(), rng);
        const auto data = testkit::make_dataset(y, d);
        const auto sample = order_sample(data);
        const auto exact = testkit::rational_cascade(sample.delta);
        const auto w = build_weight_matrix(data);
        const WeightRowGenerator gen(sample);
        std::vector<double> row;
        for (std::size_t r = 0; r < n; ++r) {
            gen.row(r, row);
            ASSERT_EQ(row.size(), exact[r].size());
            for (std::size_t c = 0; c < row.size(); ++c) {
                const double e = static_cast<double>(exact[r][c]);
                EXPECT_NEAR(w.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)), e, 1e-12);
                EXPECT_NEAR(row[c], e, 1e-12);
            }
        }
    }
}

TEST(Redistribution, MatrixInvariants) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto [y, d] = random_sample(rng, 60, 0.5, 25);
        const auto w = build_weight_matrix(testkit::make_dataset(y, d));
        for (std::size_t r = 0; r < w.rows(); ++r) {
            const auto ri = static_cast<Eigen::Index>(r);
            EXPECT_NEAR(w.weights.row(ri).sum(), 1.0, 1e-12);
            EXPECT_GE(w.weights.row(ri).minCoeff(), 0.0);
            if (w.row_delta[r] == 1) {
                EXPECT_EQ((w.weights.row(ri).array() == 1.0).count(), 1);
                EXPECT_EQ((w.weights.row(ri).array() != 0.0).count(), 1);
            } else {
                for (std::size_t c = 0; c < w.cols(); ++c) {
                    if (w.col_times[c] < w.row_times[r]) EXPECT_EQ(w.weights(ri, static_cast<Eigen::Index>(c)), 0.0);
                }
            }
        }
        for (std::size_t c = 1; c < w.cols(); ++c) EXPECT_LE(w.col_times[c - 1], w.col_times[c]);
    }
}

TEST(Redistribution, BinnedClosedFormMatchesDenseRoute) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto [y, d] = random_sample(rng, 150, 0.4, 60);
        const auto data = testkit::make_dataset(y, d);
        const BinningScheme scheme({0, 10, 20, 35, 50, 61});
        const auto fast = bin_weights(data, scheme);
        const auto dense = bin_weights(build_weight_matrix(data), scheme, data.size());
        EXPECT_LT((fast.mass - dense.mass).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_EQ(fast.row_delta, dense.row_delta);
    }
}

TEST(CrossMatrix, ShapesAndStructuralZeros) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        auto [y, d] = random_sample(rng, 50, 0.5, 40);
        d.front() = 0;
        d.back() = 1;
        const auto data = testkit::make_dataset(y, d);
        const auto wc = build_cross_weight_matrix(data, CrossDirection::censored_rows);
        const auto wt = build_cross_weight_matrix(data, CrossDirection::event_rows);
        EXPECT_EQ(wc.rows(), data.n_censored());
        EXPECT_EQ(wt.rows(), data.n_uncensored());
        for (const auto* w : {&wc, &wt}) {
            for (std::size_t r = 0; r < w->rows(); ++r) {
                EXPECT_NEAR(w->weights.row(static_cast<Eigen::Index>(r)).sum(), 1.0, 1e-12);
                for (std::size_t c = 0; c < w->cols(); ++c) {
                    if (w->col_times[c] < w->row_times[r]) {
                        EXPECT_EQ(w->weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)), 0.0);
                    }
                }
            }
        }
    }
}

TEST(CrossMatrix, RequiresBothStatuses) {
    EXPECT_THROW(build_cross_weight_matrix(testkit::make_dataset({1, 2}, {1, 1}), CrossDirection::censored_rows),
                 DomainError);
    EXPECT_THROW(build_cross_weight_matrix(testkit::make_dataset({1, 2}, {0, 0}), CrossDirection::event_rows),
                 DomainError);
}
