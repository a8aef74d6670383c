#pragma once

// Process tomography baseline: linear-inversion seed, maximum-likelihood
// CPTP reconstruction, and the tomography infidelity-vs-samples curve.

#include "qgv/simulate.hpp"

namespace qgv {

struct MleOptions {
    int max_iterations = 20000;
    double tolerance = 1e-10;          // on the per-shot log-likelihood change
    double count_floor = 1e-12;        // added inside logs for empty bins
    double tp_residual_target = 1e-6;  // Frobenius norm of the TP defect
};

struct MleResult {
    ProcessMatrix chi;
    bool converged;
    int iterations;
    double log_likelihood;
    double tp_residual;
};

struct QptCurvePoint {
    std::int64_t n_total;
    double mean_infidelity;
    double sd_infidelity;
    double infidelity_upper;  // one-sided (1 - delta) normal upper bound
};

/// Least-squares chi from observed frequencies.  Hermitian with unit trace
/// by construction; may violate positivity.  Throws RankDeficient.
ProcessMatrix linear_inversion(const QptGrid& grid, const CountTable& counts);

/// Multinomial MLE over chi = T^dag T / Tr(T^dag T) with a ramped quadratic
/// penalty on the trace-preservation defect.  Never throws on
/// non-convergence; inspect the converged flag.
MleResult mle_reconstruct(const QptGrid& grid, const CountTable& counts,
                          const MleOptions& options = {});

/// Frobenius norm of sum_mn chi_mn P_n^dag P_m - I.
double tp_residual(const ProcessMatrix& chi);

/// Per N: split the budget over the grid, reconstruct, measure 1 - F_e
/// against the ideal gate; aggregate mean and mean + z_{1-delta} sd across
/// repetitions (stream = base.stream + grid_index * repetitions + rep).
std::vector<QptCurvePoint> qpt_epsilon_curve(const QuantumChannel& device,
                                             const UnitaryGate& ideal,
                                             const std::vector<std::int64_t>& n_grid,
                                             int repetitions, double delta, RngSpec base,
                                             const MleOptions& options = {});

}  // namespace qgv
