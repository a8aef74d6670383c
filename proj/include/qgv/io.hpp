#pragma once

// File formats: gate/channel spec JSON, strategy dump JSON, outcome-record
// JSONL, count-table CSV, results CSV, fit report JSON, chi-matrix JSON.
// Complex numbers are always [re, im] pairs.

#include <iosfwd>
#include <optional>
#include <string>

#include "qgv/certify.hpp"
#include "qgv/simulate.hpp"
#include "qgv/tomography.hpp"

namespace qgv {

struct GateSpec {
    UnitaryGate gate;
    std::optional<NoiseModel> noise;
};

GateSpec parse_gate_spec(const std::string& json_text);
GateSpec load_gate_spec(const std::string& path);
std::string gate_spec_to_json(const GateSpec& spec);

std::string strategy_to_json(const VerificationStrategy& strategy);

void write_records_jsonl(std::ostream& os, const std::vector<OutcomeRecord>& records);
std::vector<OutcomeRecord> read_records_jsonl(std::istream& is);

void write_counts_csv(std::ostream& os, const CountTable& table);
CountTable read_counts_csv(std::istream& is);

/// Columns: N, M, delta, nu, epsilon (one row per repetition per grid point).
void write_results_csv(std::ostream& os, const CampaignResult& result);

/// Columns: N, mean_epsilon, sd_epsilon.
void write_campaign_curve_csv(std::ostream& os, const CampaignResult& result);

/// Columns: N, mean_infidelity, sd_infidelity, upper.
void write_qpt_curve_csv(std::ostream& os, const std::vector<QptCurvePoint>& curve);

std::string fit_to_json(const ScalingFit& fit);

std::string chi_to_json(const ProcessMatrix& chi);
ProcessMatrix chi_from_json(const std::string& json_text);

std::string verification_result_to_json(const VerificationResult& result);

}  // namespace qgv
