#include "ceda/entropy.hpp"

#include "ceda/error.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace ceda {

namespace {

double plogp_sum(const Eigen::Ref<const Eigen::VectorXd>& mass) {
    const double total = mass.sum();
    if (!(total > 0.0)) return 0.0;
    double h = 0.0;
    for (Eigen::Index i = 0; i < mass.size(); ++i) {
        const double p = mass[i] / total;
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

void require_mass(const ContingencyTable& table) {
    if (!(table.total() > 0.0)) throw DomainError("entropy of an all-zero table");
}

// Groups table rows by a code and returns the aggregated cells.
Eigen::MatrixXd group_rows(const ContingencyTable& table, std::span<const int> code_of_row) {
    int levels = 0;
    for (int c : code_of_row) levels = std::max(levels, c + 1);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(levels, table.cells().cols());
    for (std::size_t r = 0; r < table.rows(); ++r) out.row(code_of_row[r]) += table.cells().row(static_cast<Eigen::Index>(r));
    return out;
}

// H[X|Y] where rows are X and columns Y.
double row_given_col(const Eigen::MatrixXd& cells) {
    const double total = cells.sum();
    double h = 0.0;
    for (Eigen::Index c = 0; c < cells.cols(); ++c) {
        const double m = cells.col(c).sum();
        if (m > 0.0) h += (m / total) * plogp_sum(cells.col(c));
    }
    return h;
}

}  // namespace

double shannon(std::span<const double> p) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("shannon: probabilities must be finite and >= 0");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw DomainError("shannon: probabilities must sum to 1");
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h;
}

double shannon_of_mass(std::span<const double> mass) {
    return plogp_sum(Eigen::Map<const Eigen::VectorXd>(mass.data(), static_cast<Eigen::Index>(mass.size())));
}

double column_entropy(const ContingencyTable& table) {
    require_mass(table);
    return plogp_sum(table.col_sums());
}

double row_entropy(const ContingencyTable& table) {
    require_mass(table);
    return plogp_sum(table.row_sums());
}

double joint_entropy(const ContingencyTable& table) {
    require_mass(table);
    const Eigen::MatrixXd& c = table.cells();
    return plogp_sum(Eigen::Map<const Eigen::VectorXd>(c.data(), c.size()));
}

ConditionalEntropy conditional_entropy(const ContingencyTable& table) {
    require_mass(table);
    const double total = table.total();
    ConditionalEntropy out;
    out.row_entropies.resize(table.rows(), 0.0);
    out.row_masses.resize(table.rows(), 0.0);
    for (std::size_t r = 0; r < table.rows(); ++r) {
        const auto row = table.cells().row(static_cast<Eigen::Index>(r)).transpose();
        const double mass = row.sum();
        out.row_masses[r] = mass;
        if (mass > 0.0) {
            out.row_entropies[r] = plogp_sum(row);
            out.value += (mass / total) * out.row_entropies[r];
        }
    }
    return out;
}

MutualInformation mutual_information(const ContingencyTable& table) {
    MutualInformation mi;
    mi.raw = row_entropy(table) + column_entropy(table) - joint_entropy(table);
    mi.value = std::max(mi.raw, 0.0);
    return mi;
}

double sce_drop(double h_response, double ce_joint, double ce_a, double ce_b) {
    return (h_response - ce_joint) - std::max(h_response - ce_a, h_response - ce_b);
}

EcologicalEffect ecological_effect(double mi_given_response, double mi_marginal, double tolerance) {
    EcologicalEffect e;
    e.difference = mi_given_response - mi_marginal;
    e.positive = e.difference > tolerance;
    return e;
}

bool interacting_flag(double sce, double ce_drop_minor, bool ecological, double factor) {
    if (!ecological || std::isinf(factor)) return false;
    if (!(sce > 0.0)) return false;
    return sce >= factor * ce_drop_minor;
}

PairInformation pair_information(const ContingencyTable& joint, std::span<const int> a_of_row,
                                 std::span<const int> b_of_row) {
    require_mass(joint);
    if (a_of_row.size() != joint.rows() || b_of_row.size() != joint.rows()) {
        throw DomainError("pair_information: row codes misaligned with table");
    }
    const Eigen::MatrixXd a_cells = group_rows(joint, a_of_row);
    const Eigen::MatrixXd b_cells = group_rows(joint, b_of_row);

    PairInformation out;
    out.mi_given_response = row_given_col(a_cells) + row_given_col(b_cells) - row_given_col(joint.cells());

    // Marginal A x B counts come from the row masses of the joint table.
    int a_levels = 0;
    int b_levels = 0;
    for (std::size_t r = 0; r < joint.rows(); ++r) {
        a_levels = std::max(a_levels, a_of_row[r] + 1);
        b_levels = std::max(b_levels, b_of_row[r] + 1);
    }
    Eigen::MatrixXd ab = Eigen::MatrixXd::Zero(a_levels, b_levels);
    const Eigen::VectorXd masses = joint.row_sums();
    for (std::size_t r = 0; r < joint.rows(); ++r) ab(a_of_row[r], b_of_row[r]) += masses[static_cast<Eigen::Index>(r)];
    out.mi_marginal = mutual_information(ContingencyTable(std::move(ab))).raw;
    return out;
}

std::vector<double> row_rescaled_ce(const ContingencyTable& table) {
    const double h = column_entropy(table);
    const auto ce = conditional_entropy(table);
    std::vector<double> out;
    for (double v : ce.row_entropies) out.push_back(h > 0.0 ? v / h : std::numeric_limits<double>::quiet_NaN());
    return out;
}

std::vector<double> col_rescaled_ce(const ContingencyTable& table) { return row_rescaled_ce(table.transpose()); }

}  // namespace ceda
