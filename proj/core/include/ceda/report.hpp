#pragma once

#include "ceda/censor_test.hpp"
#include "ceda/coxph.hpp"
#include "ceda/mfs.hpp"
#include "ceda/redistribution.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

// CSV and JSON emitters. Numbers are printed with 10 significant digits in
// CSV and full precision in JSON; output depends only on the inputs.
namespace ceda::report {

// Wald p-values by feature name, used to add a PH column to MFS tables.
using CoxPValues = std::map<std::string, double>;

CoxPValues cox_p_values(const CoxFit& fit);

// rank, feature_set, ce, ce_drop, sce_drop, ecological, ecological_flag,
// interacting, reliability_p, levels[, ph_p]. For sets ph_p lists the members'
// p-values separated by ';'.
void write_mfs_csv(std::ostream& out, const MfsReport& report, const CoxPValues* cox = nullptr);
std::string mfs_json(const std::vector<MfsReport>& reports, const CoxPValues* cox = nullptr);

void write_cox_csv(std::ostream& out, const CoxFit& fit);
std::string cox_json(const CoxFit& fit);

// axis, label, mass, observed, p_value, min_error_sum, skipped
void write_censor_summary_csv(std::ostream& out, const CensorTestResult& result);
// axis, label, kind (null|alt), replicate, value
void write_censor_samples_csv(std::ostream& out, const CensorTestResult& result);
std::string censor_json(const CensorTestResult& result);

void write_reliability_csv(std::ostream& out, const std::string& feature_set, const ReliabilityNull& null, double observed);

void write_mce_csv(std::ostream& out, const MceResult& mce);
void write_mce_edges_csv(std::ostream& out, const MceResult& mce);

// series, category, ce, rescaled_ce, mass, dominant_bin
void write_expansion_csv(std::ostream& out, const CeExpansion& expansion);
void write_code_ids_csv(std::ostream& out, const std::vector<CodeId>& ids);

// Nonzero entries as (row_id, row_time, row_delta, col_time, weight).
void write_weight_triplets(std::ostream& out, const WeightMatrix& weights);

}  // namespace ceda::report
