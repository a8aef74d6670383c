#include "qgv/simulate.hpp"

#include <cmath>
#include <iostream>

namespace qgv {

QptGrid standard_qpt_grid(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 2)
        throw OutOfRange("standard_qpt_grid: only 1 or 2 qubits supported");
    static const char* probe_names[] = {"0", "1", "+", "-", "+i", "-i"};
    struct BasisDef {
        const char* name;
        int sigma;
    };
    static const BasisDef basis_defs[] = {{"X", 1}, {"Y", 2}, {"Z", 3}};

    QptGrid grid;
    grid.n_qubits = n_qubits;
    if (n_qubits == 1) {
        for (const char* p : probe_names)
            grid.probes.push_back({p, DensityMatrix::pure(named_ket(p))});
        for (const auto& b : basis_defs) {
            grid.bases.push_back({b.name,
                                  {projector_onto_sign(pauli(b.sigma), +1),
                                   projector_onto_sign(pauli(b.sigma), -1)}});
        }
        return grid;
    }
    for (const char* p1 : probe_names) {
        for (const char* p2 : probe_names) {
            CVec a = named_ket(p1), b = named_ket(p2);
            CVec v(4);
            v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
            grid.probes.push_back({std::string(p1) + "|" + p2, DensityMatrix::pure(v)});
        }
    }
    for (const auto& b1 : basis_defs) {
        for (const auto& b2 : basis_defs) {
            std::vector<CMat> projs;
            for (int s1 : {+1, -1})
                for (int s2 : {+1, -1})
                    projs.push_back(tensor(projector_onto_sign(pauli(b1.sigma), s1),
                                           projector_onto_sign(pauli(b2.sigma), s2)));
            grid.bases.push_back({std::string(b1.name) + b2.name, std::move(projs)});
        }
    }
    return grid;
}

int born_sample(const DensityMatrix& state, const CMat& observable, Rng& rng) {
    if (observable.rows() != state.dim())
        throw DimensionMismatch("born_sample: dimension mismatch");
    CMat p_plus = projector_onto_sign(observable, +1);
    double p = (p_plus * state.matrix()).trace().real();
    p = std::min(1.0, std::max(0.0, p));
    return rng.next_double() < p ? +1 : -1;
}

std::vector<OutcomeRecord> run_qgv(const VerificationStrategy& strategy,
                                   const QuantumChannel& device, std::int64_t n, Rng& rng) {
    if (device.dim() != strategy.gate.dim())
        throw DimensionMismatch("run_qgv: strategy and device dimensions differ");
    const size_t k = strategy.settings.size();
    std::vector<double> cumulative(k);
    std::vector<double> p_pass(k);
    double acc = 0.0;
    for (size_t i = 0; i < k; ++i) {
        const auto& s = strategy.settings[i];
        acc += s.probability;
        cumulative[i] = acc;
        CMat q = projector_onto_sign(s.observable, +1);
        DensityMatrix out = apply(device, s.input_state);
        double p = (q * out.matrix()).trace().real();
        p_pass[i] = std::min(1.0, std::max(0.0, p));
    }
    cumulative.back() = 1.0;

    std::vector<OutcomeRecord> records;
    records.reserve(size_t(n));
    for (std::int64_t t = 0; t < n; ++t) {
        const double u = rng.next_double();
        size_t idx = 0;
        while (idx + 1 < k && u >= cumulative[idx]) ++idx;
        const auto& s = strategy.settings[idx];
        const int outcome = rng.next_double() < p_pass[idx] ? +1 : -1;
        records.push_back({t, s.label, outcome, judge(s, outcome)});
    }
    return records;
}

std::vector<std::int64_t> allocate_shots(std::int64_t total, int n_settings) {
    if (n_settings < 1) throw OutOfRange("allocate_shots: need at least one setting");
    if (total < 0) throw OutOfRange("allocate_shots: negative budget");
    std::vector<std::int64_t> shots(size_t(n_settings), total / n_settings);
    const std::int64_t rem = total % n_settings;
    for (std::int64_t i = 0; i < rem; ++i) ++shots[size_t(i)];
    return shots;
}

static void check_informationally_complete(const QptGrid& grid) {
    const int d = 1 << grid.n_qubits;
    Eigen::MatrixXcd m(grid.probes.size(), d * d);
    for (size_t j = 0; j < grid.probes.size(); ++j) {
        const CMat& rho = grid.probes[j].state.matrix();
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) m(Eigen::Index(j), r * d + c) = rho(r, c);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(1e-9);
    if (qr.rank() < d * d)
        std::cerr << "warning: probe set is not informationally complete; "
                     "linear inversion will be rank-deficient\n";
}

static CountTable qpt_counts_impl(const QuantumChannel& device, const QptGrid& grid,
                                  const std::vector<std::int64_t>& shots, Rng& rng,
                                  std::int64_t base_shots) {
    if (device.n_qubits() != grid.n_qubits)
        throw DimensionMismatch("run_qpt_counts: device and grid dimensions differ");
    check_informationally_complete(grid);
    CountTable table;
    table.shots_per_setting = base_shots;
    size_t setting = 0;
    for (const auto& probe : grid.probes) {
        DensityMatrix out = apply(device, probe.state);
        for (const auto& basis : grid.bases) {
            const size_t n_out = basis.projectors.size();
            std::vector<double> cum(n_out);
            double acc = 0.0;
            for (size_t o = 0; o < n_out; ++o) {
                double p = (basis.projectors[o] * out.matrix()).trace().real();
                acc += std::min(1.0, std::max(0.0, p));
                cum[o] = acc;
            }
            cum.back() = std::max(cum.back(), 1.0);
            CountRow row{probe.label, basis.label, std::vector<std::int64_t>(n_out, 0)};
            for (std::int64_t s = 0; s < shots[setting]; ++s) {
                const double u = rng.next_double();
                size_t o = 0;
                while (o + 1 < n_out && u >= cum[o]) ++o;
                ++row.counts[o];
            }
            table.rows.push_back(std::move(row));
            ++setting;
        }
    }
    return table;
}

CountTable run_qpt_counts(const QuantumChannel& device, const QptGrid& grid,
                          std::int64_t shots_per_setting, Rng& rng) {
    std::vector<std::int64_t> shots(size_t(grid.n_settings()), shots_per_setting);
    return qpt_counts_impl(device, grid, shots, rng, shots_per_setting);
}

CountTable run_qpt_counts_total(const QuantumChannel& device, const QptGrid& grid,
                                std::int64_t total_shots, Rng& rng) {
    auto shots = allocate_shots(total_shots, grid.n_settings());
    return qpt_counts_impl(device, grid, shots, rng, total_shots / grid.n_settings());
}

CampaignResult campaign(const VerificationStrategy& strategy, const QuantumChannel& device,
                        const std::vector<std::int64_t>& n_grid, int repetitions,
                        double delta, RngSpec base) {
    if (repetitions < 1) throw OutOfRange("campaign: repetitions must be >= 1");
    CampaignResult result;
    for (size_t gi = 0; gi < n_grid.size(); ++gi) {
        CampaignPoint point;
        point.n = n_grid[gi];
        double sum = 0.0, sum2 = 0.0;
        for (int rep = 0; rep < repetitions; ++rep) {
            Rng rng(RngSpec{base.seed,
                            base.stream + std::uint64_t(gi) * std::uint64_t(repetitions) +
                                std::uint64_t(rep)});
            auto records = run_qgv(strategy, device, point.n, rng);
            std::int64_t m = 0;
            for (const auto& r : records) m += r.passed ? 1 : 0;
            auto vr = make_verification_result(m, point.n, delta, strategy.nu);
            sum += vr.epsilon;
            sum2 += vr.epsilon * vr.epsilon;
            point.repetitions.push_back(vr);
        }
        point.mean_epsilon = sum / repetitions;
        point.sd_epsilon =
            repetitions > 1
                ? std::sqrt(std::max(0.0, (sum2 - sum * sum / repetitions) / (repetitions - 1)))
                : 0.0;
        result.points.push_back(std::move(point));
    }
    return result;
}

}  // namespace qgv
