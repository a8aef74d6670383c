#pragma once

// Seeded Monte-Carlo engine: Born-rule sampling, QGV trial runs,
// tomography count tables, and repeated certification campaigns.

#include <cstdint>
#include <string>
#include <vector>

#include "qgv/certify.hpp"
#include "qgv/rng.hpp"
#include "qgv/verification.hpp"

namespace qgv {

struct OutcomeRecord {
    std::int64_t trial;
    std::string setting;
    int outcome;  // +1 or -1
    bool passed;
};

struct QptProbe {
    std::string label;
    DensityMatrix state;
};

struct QptBasis {
    std::string label;
    std::vector<CMat> projectors;  // 2^n outcome projectors, fixed order
};

struct QptGrid {
    int n_qubits;
    std::vector<QptProbe> probes;
    std::vector<QptBasis> bases;
    int n_settings() const { return int(probes.size() * bases.size()); }
};

struct CountRow {
    std::string probe;
    std::string basis;
    std::vector<std::int64_t> counts;  // one per outcome
    std::int64_t shots() const {
        std::int64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }
};

struct CountTable {
    std::int64_t shots_per_setting;  // base allocation; rows may hold one extra
    std::vector<CountRow> rows;
};

/// The standard probing grid: six eigenstate probes and the X, Y, Z bases,
/// tensored per qubit for n = 2 (36 probes x 9 bases).
QptGrid standard_qpt_grid(int n_qubits);

/// Draw +1 with probability Tr(P+ rho).  Consumes exactly one uniform.
int born_sample(const DensityMatrix& state, const CMat& observable, Rng& rng);

/// N verification trials: draw a setting (declaration-order cumulative
/// sampling), pass the input through the device, draw the outcome, judge.
std::vector<OutcomeRecord> run_qgv(const VerificationStrategy& strategy,
                                   const QuantumChannel& device, std::int64_t n, Rng& rng);

/// Multinomial counts per (probe, basis) setting at equal shots.
CountTable run_qpt_counts(const QuantumChannel& device, const QptGrid& grid,
                          std::int64_t shots_per_setting, Rng& rng);

/// Same, with a total budget split floor(N/n_settings) per setting and the
/// remainder given to the first settings in declaration order.
CountTable run_qpt_counts_total(const QuantumChannel& device, const QptGrid& grid,
                                std::int64_t total_shots, Rng& rng);

std::vector<std::int64_t> allocate_shots(std::int64_t total, int n_settings);

struct CampaignPoint {
    std::int64_t n;
    std::vector<VerificationResult> repetitions;
    double mean_epsilon;
    double sd_epsilon;
};

struct CampaignResult {
    std::vector<CampaignPoint> points;
};

/// One QGV run per (N, repetition) with its own RNG stream
/// (stream = base.stream + grid_index * repetitions + repetition).
CampaignResult campaign(const VerificationStrategy& strategy, const QuantumChannel& device,
                        const std::vector<std::int64_t>& n_grid, int repetitions,
                        double delta, RngSpec base);

}  // namespace qgv
