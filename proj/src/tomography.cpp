#include "qgv/tomography.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>

namespace qgv {

namespace {

// p_b = Tr(chi C_b) for each count bin b, C_b Hermitian.
struct BinSystem {
    std::vector<CMat> c;               // one per bin, D x D
    std::vector<std::int64_t> counts;  // same order
    std::int64_t total = 0;
};

BinSystem build_bins(const QptGrid& grid, const CountTable& counts) {
    const int d = 1 << grid.n_qubits;
    const int dim = d * d;
    auto paulis = pauli_strings(grid.n_qubits);
    if (counts.rows.size() != size_t(grid.n_settings()))
        throw DimensionMismatch("tomography: count table does not match the grid");
    BinSystem sys;
    size_t row_idx = 0;
    for (const auto& probe : grid.probes) {
        // Cache P_m rho for this probe.
        std::vector<CMat> p_rho(static_cast<size_t>(dim));
        for (int m = 0; m < dim; ++m) p_rho[size_t(m)] = paulis[size_t(m)] * probe.state.matrix();
        for (const auto& basis : grid.bases) {
            const auto& row = counts.rows[row_idx];
            if (row.probe != probe.label || row.basis != basis.label)
                throw DimensionMismatch("tomography: count rows out of declaration order");
            if (row.counts.size() != basis.projectors.size())
                throw DimensionMismatch("tomography: outcome count mismatch");
            for (size_t o = 0; o < basis.projectors.size(); ++o) {
                CMat c(dim, dim);
                for (int m = 0; m < dim; ++m)
                    for (int n = 0; n < dim; ++n)
                        c(n, m) = (basis.projectors[o] * p_rho[size_t(m)] *
                                   paulis[size_t(n)].adjoint())
                                      .trace();
                sys.c.push_back((c + c.adjoint()) / 2.0);
                sys.counts.push_back(row.counts[o]);
                sys.total += row.counts[o];
            }
            ++row_idx;
        }
    }
    return sys;
}

double bin_probability(const CMat& c, const CMat& chi) {
    return std::max(0.0, (chi * c).trace().real());
}

}  // namespace

double tp_residual(const ProcessMatrix& chi) {
    auto paulis = pauli_strings(chi.n_qubits);
    const int d = 1 << chi.n_qubits;
    const Eigen::Index dim = chi.chi.rows();
    CMat e = -CMat::Identity(d, d);
    for (Eigen::Index m = 0; m < dim; ++m)
        for (Eigen::Index n = 0; n < dim; ++n)
            e += chi.chi(m, n) * paulis[size_t(n)].adjoint() * paulis[size_t(m)];
    return e.norm();
}

ProcessMatrix linear_inversion(const QptGrid& grid, const CountTable& counts) {
    const int d = 1 << grid.n_qubits;
    const int dim = d * d;
    BinSystem sys = build_bins(grid, counts);

    // Real parameters: diagonal entries, then (Re, Im) of each upper
    // off-diagonal entry.
    const int n_params = dim * dim;
    const int n_bins = int(sys.c.size());
    Eigen::MatrixXd a(n_bins + 1, n_params);
    Eigen::VectorXd b(n_bins + 1);

    // Frequencies use the per-row shot totals.
    std::vector<double> row_shots;
    for (const auto& row : counts.rows) row_shots.push_back(double(row.shots()));

    const size_t outcomes = sys.c.size() / counts.rows.size();
    for (int bin = 0; bin < n_bins; ++bin) {
        const CMat& c = sys.c[size_t(bin)];
        int col = 0;
        for (int m = 0; m < dim; ++m) a(bin, col++) = c(m, m).real();
        for (int m = 0; m < dim; ++m)
            for (int n = m + 1; n < dim; ++n) {
                a(bin, col++) = 2.0 * c(n, m).real();
                a(bin, col++) = -2.0 * c(n, m).imag();
            }
        const double shots = row_shots[size_t(bin) / outcomes];
        b(bin) = shots > 0 ? double(sys.counts[size_t(bin)]) / shots : 0.0;
    }
    // Unit-trace constraint, weighted to dominate.
    const double w = 100.0;
    a.row(n_bins).setZero();
    for (int m = 0; m < dim; ++m) a(n_bins, m) = w;
    b(n_bins) = w;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-9);
    if (qr.rank() < n_params)
        throw RankDeficient("linear_inversion: probing grid does not determine chi");
    Eigen::VectorXd x = qr.solve(b);

    CMat chi = CMat::Zero(dim, dim);
    int col = 0;
    for (int m = 0; m < dim; ++m) chi(m, m) = x(col++);
    for (int m = 0; m < dim; ++m)
        for (int n = m + 1; n < dim; ++n) {
            const double re = x(col++), im = x(col++);
            chi(m, n) = Complex(re, im);
            chi(n, m) = Complex(re, -im);
        }
    chi /= chi.trace().real();
    return ProcessMatrix{grid.n_qubits, std::move(chi)};
}

namespace {

// Clip negative eigenvalues and return a Hermitian PSD square root factor.
CMat psd_factor(const CMat& chi) {
    Eigen::SelfAdjointEigenSolver<CMat> es((chi + chi.adjoint()) / 2.0);
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(1e-8);
    vals /= vals.sum();
    return es.eigenvectors() * vals.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

struct Objective {
    const BinSystem* sys;
    const std::vector<CMat>* r;  // r[m * dim + n] = P_n P_m
    int d;
    int dim;
    double floor;
    double mu;

    CMat chi_of(const CMat& t) const {
        CMat s = t.adjoint() * t;
        return s / s.trace().real();
    }

    double log_likelihood(const CMat& chi) const {
        double ll = 0.0;
        for (size_t bin = 0; bin < sys->c.size(); ++bin) {
            if (sys->counts[bin] == 0) continue;
            ll += double(sys->counts[bin]) * std::log(bin_probability(sys->c[bin], chi) + floor);
        }
        return ll;
    }

    CMat tp_defect(const CMat& chi) const {
        CMat e = -CMat::Identity(d, d);
        for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n) e += chi(m, n) * (*r)[size_t(m) * size_t(dim) + size_t(n)];
        return e;
    }

    double value(const CMat& chi) const {
        const CMat e = tp_defect(chi);
        return log_likelihood(chi) - mu * e.squaredNorm();
    }

    // Gradient matrix G with d(value) = Tr(G dchi).
    CMat chi_gradient(const CMat& chi) const {
        CMat g = CMat::Zero(dim, dim);
        for (size_t bin = 0; bin < sys->c.size(); ++bin) {
            if (sys->counts[bin] == 0) continue;
            const double p = bin_probability(sys->c[bin], chi) + floor;
            g += (double(sys->counts[bin]) / p) * sys->c[bin];
        }
        const CMat e = tp_defect(chi);
        CMat gp(dim, dim);
        for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n)
                gp(n, m) = 2.0 * (e * (*r)[size_t(m) * size_t(dim) + size_t(n)]).trace();
        g -= mu * gp;
        return (g + g.adjoint()) / 2.0;
    }
};

}  // namespace

MleResult mle_reconstruct(const QptGrid& grid, const CountTable& counts,
                          const MleOptions& options) {
    const int d = 1 << grid.n_qubits;
    const int dim = d * d;
    BinSystem sys = build_bins(grid, counts);
    auto paulis = pauli_strings(grid.n_qubits);
    std::vector<CMat> r(size_t(dim) * size_t(dim));
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n)
            r[size_t(m) * size_t(dim) + size_t(n)] = paulis[size_t(n)] * paulis[size_t(m)];

    CMat t;
    try {
        t = psd_factor(linear_inversion(grid, counts).chi);
    } catch (const RankDeficient&) {
        t = CMat::Identity(dim, dim) / std::sqrt(double(dim));
    }

    Objective obj{&sys, &r, d, dim, options.count_floor, std::max(1.0, double(sys.total))};
    const double tol = options.tolerance * std::max<double>(1.0, double(sys.total));

    double f = obj.value(obj.chi_of(t));
    double eta = 1e-3;
    int iter = 0;
    bool converged = false;
    while (iter < options.max_iterations) {
        ++iter;
        const CMat chi = obj.chi_of(t);
        const CMat g = obj.chi_gradient(chi);
        const double trace = (t.adjoint() * t).trace().real();
        const CMat g_hat = (g - (g * chi).trace().real() * CMat::Identity(dim, dim)) / trace;
        const CMat direction = t * g_hat;

        // Backtracking line search, growing the step after easy accepts.
        double step = eta * 2.0;
        double f_new = f;
        CMat t_new;
        bool accepted = false;
        while (step > 1e-18) {
            t_new = t + step * direction;
            f_new = obj.value(obj.chi_of(t_new));
            if (f_new > f) {
                accepted = true;
                break;
            }
            step /= 2.0;
        }
        if (!accepted) {
            // Flat along the ascent direction at this penalty weight.
            if (tp_residual(ProcessMatrix{grid.n_qubits, chi}) <= options.tp_residual_target) {
                converged = true;
                break;
            }
            obj.mu *= 10.0;
            if (obj.mu > 1e18) break;
            f = obj.value(chi);
            eta = 1e-3;
            continue;
        }
        eta = step;
        t = t_new;
        if (std::abs(f_new - f) < tol) {
            const CMat chi_now = obj.chi_of(t);
            if (tp_residual(ProcessMatrix{grid.n_qubits, chi_now}) <=
                options.tp_residual_target) {
                converged = true;
                f = f_new;
                break;
            }
            obj.mu *= 10.0;
            if (obj.mu > 1e18) break;
            f = obj.value(chi_now);
            eta = 1e-3;
            continue;
        }
        f = f_new;
    }

    CMat chi = obj.chi_of(t);
    chi = (chi + chi.adjoint()) / 2.0;
    ProcessMatrix pm{grid.n_qubits, chi};
    return MleResult{pm, converged, iter, obj.log_likelihood(chi), tp_residual(pm)};
}

std::vector<QptCurvePoint> qpt_epsilon_curve(const QuantumChannel& device,
                                             const UnitaryGate& ideal,
                                             const std::vector<std::int64_t>& n_grid,
                                             int repetitions, double delta, RngSpec base,
                                             const MleOptions& options) {
    if (repetitions < 1) throw OutOfRange("qpt_epsilon_curve: repetitions must be >= 1");
    if (delta <= 0.0 || delta >= 1.0) throw OutOfRange("qpt_epsilon_curve: delta in (0, 1)");
    const QptGrid grid = standard_qpt_grid(device.n_qubits());
    const ProcessMatrix chi_ideal = channel_to_chi(unitary_channel(ideal));
    const double z = boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - delta);

    std::vector<QptCurvePoint> out;
    for (size_t gi = 0; gi < n_grid.size(); ++gi) {
        double sum = 0.0, sum2 = 0.0;
        for (int rep = 0; rep < repetitions; ++rep) {
            Rng rng(RngSpec{base.seed,
                            base.stream + std::uint64_t(gi) * std::uint64_t(repetitions) +
                                std::uint64_t(rep)});
            CountTable counts = run_qpt_counts_total(device, grid, n_grid[gi], rng);
            MleResult mle = mle_reconstruct(grid, counts, options);
            const double infid =
                std::max(0.0, 1.0 - process_fidelity(chi_ideal, mle.chi));
            sum += infid;
            sum2 += infid * infid;
        }
        const double mean = sum / repetitions;
        const double sd =
            repetitions > 1
                ? std::sqrt(std::max(0.0, (sum2 - sum * sum / repetitions) / (repetitions - 1)))
                : 0.0;
        out.push_back(QptCurvePoint{n_grid[gi], mean, sd, mean + z * sd});
    }
    return out;
}

}  // namespace qgv
