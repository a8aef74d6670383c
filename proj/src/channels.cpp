#include "qgv/channels.hpp"

#include <cmath>

namespace qgv {

QuantumChannel QuantumChannel::from_kraus(int n_qubits, std::vector<CMat> kraus) {
    if (n_qubits < 1) throw OutOfRange("QuantumChannel: n_qubits must be >= 1");
    if (kraus.empty()) throw OutOfRange("QuantumChannel: empty Kraus set");
    const Eigen::Index d = Eigen::Index(1) << n_qubits;
    CMat sum = CMat::Zero(d, d);
    for (const auto& k : kraus) {
        if (k.rows() != d || k.cols() != d)
            throw DimensionMismatch("QuantumChannel: Kraus operator has wrong dimension");
        sum += k.adjoint() * k;
    }
    if ((sum - CMat::Identity(d, d)).norm() > 1e-10)
        throw OutOfRange("QuantumChannel: sum K^dag K != I");
    return QuantumChannel(n_qubits, std::move(kraus));
}

QuantumChannel QuantumChannel::identity(int n_qubits) {
    const Eigen::Index d = Eigen::Index(1) << n_qubits;
    return from_kraus(n_qubits, {CMat::Identity(d, d)});
}

QuantumChannel unitary_channel(const UnitaryGate& u) {
    return QuantumChannel::from_kraus(u.n_qubits(), {u.matrix()});
}

DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho) {
    if (rho.dim() != ch.dim())
        throw DimensionMismatch("apply: state and channel dimensions differ");
    CMat out = CMat::Zero(rho.dim(), rho.dim());
    for (const auto& k : ch.kraus()) out += k * rho.matrix() * k.adjoint();
    return DensityMatrix::from_matrix(std::move(out));
}

static std::vector<CMat> single_qubit_kraus(const NoiseModel& model);

static QuantumChannel per_qubit_channel(const std::vector<CMat>& local, int n_qubits) {
    // Tensor the local Kraus set across qubits.
    std::vector<CMat> ops = local;
    for (int q = 1; q < n_qubits; ++q) {
        std::vector<CMat> next;
        next.reserve(ops.size() * local.size());
        for (const auto& a : ops)
            for (const auto& b : local) next.push_back(tensor(a, b));
        ops = std::move(next);
    }
    return QuantumChannel::from_kraus(n_qubits, std::move(ops));
}

QuantumChannel make_noise(const NoiseModel& model, int n_qubits) {
    if (n_qubits < 1) throw OutOfRange("make_noise: n_qubits must be >= 1");
    const Eigen::Index d = Eigen::Index(1) << n_qubits;
    if (const auto* dep = std::get_if<DepolarizingNoise>(&model.kind)) {
        const double p = dep->p;
        if (p < 0.0 || p > 1.0) throw OutOfRange("depolarizing: p must be in [0, 1]");
        // rho -> (1-p) rho + p I/d realized as Pauli twirl weights.
        const double d2 = double(d) * double(d);
        std::vector<CMat> ops;
        auto paulis = pauli_strings(n_qubits);
        ops.push_back(std::sqrt(1.0 - p + p / d2) * paulis[0]);
        for (size_t i = 1; i < paulis.size(); ++i)
            ops.push_back(std::sqrt(p / d2) * paulis[i]);
        return QuantumChannel::from_kraus(n_qubits, std::move(ops));
    }
    if (std::holds_alternative<AmplitudeDampingNoise>(model.kind) ||
        std::holds_alternative<OverRotationNoise>(model.kind)) {
        return per_qubit_channel(single_qubit_kraus(model), n_qubits);
    }
    const auto& comp = std::get<CompositeNoise>(model.kind);
    if (comp.parts.empty()) return QuantumChannel::identity(n_qubits);
    QuantumChannel ch = make_noise(comp.parts.front(), n_qubits);
    for (size_t i = 1; i < comp.parts.size(); ++i)
        ch = compose(make_noise(comp.parts[i], n_qubits), ch);
    return ch;
}

static std::vector<CMat> single_qubit_kraus(const NoiseModel& model) {
    if (const auto* ad = std::get_if<AmplitudeDampingNoise>(&model.kind)) {
        const double g = ad->gamma;
        if (g < 0.0 || g > 1.0) throw OutOfRange("amplitude_damping: gamma must be in [0, 1]");
        CMat k0(2, 2), k1(2, 2);
        k0 << 1, 0, 0, std::sqrt(1.0 - g);
        k1 << 0, std::sqrt(g), 0, 0;
        return {k0, k1};
    }
    const auto& rot = std::get<OverRotationNoise>(model.kind);
    double nx = rot.axis[0], ny = rot.axis[1], nz = rot.axis[2];
    const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (std::abs(norm - 1.0) > 1e-10)
        throw OutOfRange("over_rotation: axis must be a unit vector");
    // exp(-i angle (axis . sigma) / 2)
    const double half = rot.angle / 2.0;
    CMat gen = nx * pauli(1) + ny * pauli(2) + nz * pauli(3);
    CMat u = std::cos(half) * pauli(0) - Complex(0, 1) * std::sin(half) * gen;
    return {u};
}

QuantumChannel compose(const QuantumChannel& after, const QuantumChannel& before) {
    if (after.n_qubits() != before.n_qubits())
        throw DimensionMismatch("compose: channel dimensions differ");
    std::vector<CMat> ops;
    ops.reserve(after.kraus().size() * before.kraus().size());
    for (const auto& a : after.kraus())
        for (const auto& b : before.kraus()) ops.push_back(a * b);
    return QuantumChannel::from_kraus(after.n_qubits(), std::move(ops));
}

QuantumChannel device_channel(const UnitaryGate& u, const NoiseModel& noise) {
    return compose(make_noise(noise, u.n_qubits()), unitary_channel(u));
}

ProcessMatrix channel_to_chi(const QuantumChannel& ch) {
    const int n = ch.n_qubits();
    const double d = double(ch.dim());
    auto paulis = pauli_strings(n);
    const Eigen::Index m = Eigen::Index(paulis.size());
    CMat chi = CMat::Zero(m, m);
    for (const auto& k : ch.kraus()) {
        CVec coeffs(m);
        for (Eigen::Index i = 0; i < m; ++i)
            coeffs(i) = (paulis[i] * k).trace() / d;
        chi += coeffs * coeffs.adjoint();
    }
    return ProcessMatrix{n, std::move(chi)};
}

DensityMatrix chi_apply(const ProcessMatrix& chi, const DensityMatrix& rho) {
    auto paulis = pauli_strings(chi.n_qubits);
    const Eigen::Index m = Eigen::Index(paulis.size());
    if (chi.chi.rows() != m || rho.dim() != (1 << chi.n_qubits))
        throw DimensionMismatch("chi_apply: dimension mismatch");
    CMat out = CMat::Zero(rho.dim(), rho.dim());
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b)
            out += chi.chi(a, b) * paulis[a] * rho.matrix() * paulis[b].adjoint();
    return DensityMatrix::from_matrix((out + out.adjoint()) / 2.0);
}

DensityMatrix channel_choi_state(const QuantumChannel& ch) {
    const Eigen::Index d = ch.dim();
    CVec phi = CVec::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(double(d));
    CMat rho = CMat::Zero(d * d, d * d);
    for (const auto& k : ch.kraus()) {
        CVec v = tensor(k, CMat::Identity(d, d)) * phi;
        rho += v * v.adjoint();
    }
    return DensityMatrix::from_matrix(std::move(rho));
}

static CMat herm_sqrt(const CMat& a) {
    Eigen::SelfAdjointEigenSolver<CMat> es((a + a.adjoint()) / 2.0);
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * vals.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b) {
    if (a.chi.rows() != b.chi.rows())
        throw DimensionMismatch("process_fidelity: dimension mismatch");
    auto is_rank_one = [](const CMat& chi) {
        Eigen::SelfAdjointEigenSolver<CMat> es((chi + chi.adjoint()) / 2.0);
        return es.eigenvalues().maxCoeff() >= chi.trace().real() - 1e-8;
    };
    double f;
    if (is_rank_one(a.chi) || is_rank_one(b.chi)) {
        f = (a.chi * b.chi).trace().real();
    } else {
        CMat sa = herm_sqrt(a.chi);
        double t = herm_sqrt(sa * b.chi * sa).trace().real();
        f = t * t;
    }
    return std::min(1.0, std::max(0.0, f));
}

double average_gate_fidelity(double entanglement_fidelity, int dim) {
    return (dim * entanglement_fidelity + 1.0) / (dim + 1.0);
}

NoiseModel calibrate_noise(double target_entanglement_fidelity, int n_qubits) {
    const double f = target_entanglement_fidelity;
    if (f <= 0.0 || f > 1.0)
        throw OutOfRange("calibrate_noise: target fidelity must be in (0, 1]");
    const double d = double(Eigen::Index(1) << n_qubits);
    const double p = (1.0 - f) * d * d / (d * d - 1.0);
    if (p > 1.0) throw OutOfRange("calibrate_noise: target fidelity unreachable by depolarizing");
    return NoiseModel{DepolarizingNoise{p}};
}

}  // namespace qgv
