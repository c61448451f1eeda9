#include <ceda/entropy.hpp>
#include <ceda/error.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace ceda;

TEST(Shannon, KnownValues) {
    const std::vector<double> uniform4{0.25, 0.25, 0.25, 0.25};
    EXPECT_NEAR(shannon(uniform4), std::log(4.0), 1e-15);
    const std::vector<double> point{0.0, 1.0};
    EXPECT_EQ(shannon(point), 0.0);
    const std::vector<double> bad{0.5, 0.6};
    EXPECT_THROW(shannon(bad), DomainError);
    const std::vector<double> negative{-0.5, 1.5};
    EXPECT_THROW(shannon(negative), DomainError);
    const std::vector<double> mass{2, 2, 0, 4};
    EXPECT_NEAR(shannon_of_mass(mass), 1.0397207708399179, 1e-14);
    EXPECT_EQ(shannon_of_mass(std::vector<double>{0, 0}), 0.0);
}

TEST(ConditionalEntropy, MatchesBruteForceOnIntegerTables) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int r = 2 + trial % 4;
        const int c = 2 + (trial / 4) % 5;
        const auto cells = testkit::random_counts(rng, r, c, 9);
        if (cells.sum() == 0) continue;
        const ContingencyTable t(cells);
        EXPECT_NEAR(conditional_entropy(t).value, testkit::brute_force_ce(cells), 1e-12);
    }
}

TEST(ConditionalEntropy, ChainRuleAndMutualInformationIdentities) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto cells = testkit::random_counts(rng, 2 + trial % 5, 2 + trial % 3, 20);
        if (cells.sum() == 0) continue;
        const ContingencyTable t(cells);
        const double h_a = row_entropy(t);
        const double h_y = column_entropy(t);
        const double h_ay = joint_entropy(t);
        const double ce = conditional_entropy(t).value;
        EXPECT_NEAR(h_ay, h_a + ce, 1e-12);
        const auto mi = mutual_information(t);
        EXPECT_NEAR(mi.raw, h_y - ce, 1e-12);
        EXPECT_NEAR(mi.value, mutual_information(t.transpose()).value, 1e-12);
        EXPECT_GE(mi.value, 0.0);
        EXPECT_LE(ce, h_y + 1e-12);
        EXPECT_GE(ce, -1e-15);
        EXPECT_LE(ce, std::log(static_cast<double>(t.cols())) + 1e-12);
    }
}

TEST(ConditionalEntropy, CoarseningRowsNeverLowersCe) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const auto cells = testkit::random_counts(rng, 6, 4, 15);
        if (cells.sum() == 0) continue;
        Eigen::MatrixXd merged(3, 4);
        for (int i = 0; i < 3; ++i) merged.row(i) = cells.row(2 * i) + cells.row(2 * i + 1);
        EXPECT_LE(conditional_entropy(ContingencyTable(cells)).value,
                  conditional_entropy(ContingencyTable(merged)).value + 1e-12);
    }
}

TEST(ConditionalEntropy, IndependentTableEqualsMarginal) {
    Eigen::VectorXd a(3), y(4);
    a << 1, 2, 3;
    y << 4, 1, 2, 5;
    const ContingencyTable t(a * y.transpose());
    EXPECT_NEAR(conditional_entropy(t).value, column_entropy(t), 1e-12);
    EXPECT_NEAR(mutual_information(t).value, 0.0, 1e-12);
}

TEST(ConditionalEntropy, RowDetailAndEmptyRows) {
    Eigen::MatrixXd m(3, 2);
    m << 2, 2, 0, 0, 4, 0;
    const auto ce = conditional_entropy(ContingencyTable(m));
    EXPECT_NEAR(ce.row_entropies[0], std::log(2.0), 1e-15);
    EXPECT_EQ(ce.row_entropies[1], 0.0);
    EXPECT_EQ(ce.row_masses[2], 4.0);
    EXPECT_NEAR(ce.value, 0.5 * std::log(2.0), 1e-15);
    EXPECT_THROW(conditional_entropy(ContingencyTable(Eigen::MatrixXd::Zero(2, 2))), DomainError);
}

TEST(Derived, SceDropAndFlags) {
    // drops: joint 0.5, a 0.2, b 0.1
    EXPECT_NEAR(sce_drop(1.0, 0.5, 0.8, 0.9), 0.3, 1e-15);
    const auto eco = ecological_effect(0.30, 0.10);
    EXPECT_TRUE(eco.positive);
    EXPECT_NEAR(eco.difference, 0.2, 1e-15);
    EXPECT_FALSE(ecological_effect(0.1, 0.1).positive);
    EXPECT_TRUE(interacting_flag(0.31, 0.1, true));
    EXPECT_FALSE(interacting_flag(0.29, 0.1, true));
    EXPECT_FALSE(interacting_flag(0.31, 0.1, false));
    EXPECT_FALSE(interacting_flag(-0.1, -0.05, true));
    EXPECT_TRUE(interacting_flag(0.2, 0.1, true, 2.0));
}

TEST(Derived, PairInformationOnXorResponse) {
    // Y = A xor B with A, B independent fair bits: I[A;B] = 0, I[A;B|Y] = log 2.
    Eigen::MatrixXd m(4, 2);
    m << 5, 0,   // (0,0) -> 0
        0, 5,    // (0,1) -> 1
        0, 5,    // (1,0) -> 1
        5, 0;    // (1,1) -> 0
    const std::vector<int> a{0, 0, 1, 1};
    const std::vector<int> b{0, 1, 0, 1};
    const auto pi = pair_information(ContingencyTable(m), a, b);
    EXPECT_NEAR(pi.mi_marginal, 0.0, 1e-15);
    EXPECT_NEAR(pi.mi_given_response, std::log(2.0), 1e-14);
}

TEST(Derived, RescaledCeOfOuterProductIsOne) {
    Eigen::VectorXd r(3), c(3);
    r << 0.2, 0.3, 0.5;
    c << 0.1, 0.6, 0.3;
    const ContingencyTable t(100.0 * r * c.transpose());
    for (double v : row_rescaled_ce(t)) EXPECT_NEAR(v, 1.0, 1e-12);
    for (double v : col_rescaled_ce(t)) EXPECT_NEAR(v, 1.0, 1e-12);
}
