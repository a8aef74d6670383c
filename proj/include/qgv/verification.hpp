#pragma once

// Gate verification strategies: probing settings, the Choi-picture
// verification operator Omega, its spectral gap, and pass/fail judging.

#include <string>
#include <vector>

#include "qgv/channels.hpp"

namespace qgv {

struct ProbingSetting {
    std::string label;
    DensityMatrix input_state;
    CMat observable;  // Hermitian involution
    int pass_sign;    // +1 or -1
    double probability;
};

struct VerificationStrategy {
    UnitaryGate gate;
    std::vector<ProbingSetting> settings;
    CMat omega;
    double nu;
};

/// U p U^dag.
CMat conjugated_observable(const UnitaryGate& u, const CMat& p);

/// Pure state (U x I)|Phi><Phi|(U x I)^dag with |Phi> = sum_i |ii>/sqrt(d).
DensityMatrix choi_state(const UnitaryGate& u);

/// Omega = d * sum_i p_i (Q_i x rho_i^T), Q_i the pass projector of setting i.
/// The transpose is taken in the computational basis.  Requires the ensemble
/// average input to be I/d (throws EnsembleNotUniform).
CMat strategy_omega(const std::vector<ProbingSetting>& settings);

/// lambda_1 - lambda_2 of the descending spectrum; eigenvalues within 1e-9
/// of the top count as degenerate (gap 0 when nothing lies below).
double spectral_gap(const CMat& omega);

/// Six settings: eigenstate of sigma with eigenvalue s, measured at
/// U sigma U^dag, passes on outcome s.  nu = 2/3 for every unitary.
VerificationStrategy single_qubit_strategy(const UnitaryGate& u);

/// Sixteen pure-product settings over the bases ZZ, ZI, XX, IX obtained by
/// conjugating each input stabilizer through CNOT.
VerificationStrategy cnot_strategy();

/// pass iff outcome equals the setting's pass sign.
bool judge(const ProbingSetting& setting, int outcome);

/// sum_i p_i Tr(Q_i Lambda(rho_i)); equals Tr(Omega choi(Lambda)).
double pass_probability(const VerificationStrategy& strategy, const QuantumChannel& channel);

}  // namespace qgv
