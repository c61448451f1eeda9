#pragma once

#include "ceda/contingency.hpp"

#include <span>
#include <vector>

// All entropies are plug-in estimates in nats, with 0 log 0 = 0.
namespace ceda {

// Entropy of a probability vector. Throws DomainError on negative entries or
// when the entries do not sum to 1 within 1e-9.
double shannon(std::span<const double> p);

// Entropy of the proportions of a nonnegative mass vector (0 when empty mass).
double shannon_of_mass(std::span<const double> mass);

double column_entropy(const ContingencyTable& table);  // H[Y]
double row_entropy(const ContingencyTable& table);     // H[A]
double joint_entropy(const ContingencyTable& table);   // H[A,Y]

struct ConditionalEntropy {
    double value = 0.0;                // H[Y|A] = sum_a (n_a / n) H[Y|A=a]
    std::vector<double> row_entropies; // H[Y|A=a]; 0 for empty rows
    std::vector<double> row_masses;    // n_a
};

// Conditional entropy of the column variable given the row variable.
// Throws DomainError on an all-zero table.
ConditionalEntropy conditional_entropy(const ContingencyTable& table);

struct MutualInformation {
    double value = 0.0;  // max(raw, 0)
    double raw = 0.0;    // H_row + H_col - H_joint
};

MutualInformation mutual_information(const ContingencyTable& table);

// Joint CE-drop minus the best single CE-drop.
double sce_drop(double h_response, double ce_joint, double ce_a, double ce_b);

struct EcologicalEffect {
    double difference = 0.0;  // I[A;B|Y] - I[A;B]
    bool positive = false;
};

EcologicalEffect ecological_effect(double mi_given_response, double mi_marginal, double tolerance = 1e-12);

// True iff the SCE-drop reaches `factor` times the smaller member CE-drop and
// the pair shows an ecological effect.
bool interacting_flag(double sce, double ce_drop_minor, bool ecological, double factor = 3.0);

// I[A;B|Y] and I[A;B] from a table whose rows are the fused (A,B) levels.
// `a_of_row` / `b_of_row` give each row's A and B code.
struct PairInformation {
    double mi_given_response = 0.0;
    double mi_marginal = 0.0;
};

PairInformation pair_information(const ContingencyTable& joint, std::span<const int> a_of_row,
                                 std::span<const int> b_of_row);

// Row entropies divided by the entropy of the column-sum proportions, and
// column entropies divided by the entropy of the row-sum proportions.
std::vector<double> row_rescaled_ce(const ContingencyTable& table);
std::vector<double> col_rescaled_ce(const ContingencyTable& table);

}  // namespace ceda
