#include "qgv/verification.hpp"

#include <cmath>

namespace qgv {

CMat conjugated_observable(const UnitaryGate& u, const CMat& p) {
    if (p.rows() != u.dim() || p.cols() != u.dim())
        throw DimensionMismatch("conjugated_observable: dimension mismatch");
    CMat out = u.matrix() * p * u.matrix().adjoint();
    return (out + out.adjoint()) / 2.0;
}

DensityMatrix choi_state(const UnitaryGate& u) {
    const Eigen::Index d = u.dim();
    CVec phi = CVec::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) phi(i * d + i) = 1.0 / std::sqrt(double(d));
    CVec v = tensor(u.matrix(), CMat::Identity(d, d)) * phi;
    return DensityMatrix::pure(v);
}

CMat strategy_omega(const std::vector<ProbingSetting>& settings) {
    if (settings.empty()) throw OutOfRange("strategy_omega: no settings");
    const Eigen::Index d = settings.front().input_state.dim();
    CMat avg = CMat::Zero(d, d);
    double ptot = 0.0;
    for (const auto& s : settings) {
        if (s.input_state.dim() != d)
            throw DimensionMismatch("strategy_omega: mixed dimensions");
        avg += s.probability * s.input_state.matrix();
        ptot += s.probability;
    }
    if (std::abs(ptot - 1.0) > 1e-12)
        throw OutOfRange("strategy_omega: probabilities must sum to 1");
    if ((avg - CMat::Identity(d, d) / double(d)).norm() > 1e-10)
        throw EnsembleNotUniform("strategy_omega: ensemble average input is not I/d");
    CMat omega = CMat::Zero(d * d, d * d);
    for (const auto& s : settings) {
        CMat q = projector_onto_sign(s.observable, s.pass_sign);
        omega += double(d) * s.probability * tensor(q, s.input_state.matrix().transpose());
    }
    return (omega + omega.adjoint()) / 2.0;
}

double spectral_gap(const CMat& omega) {
    HermEig eig = eig_hermitian(omega);
    const double top = eig.values(0);
    if (top < -1e-10 || top > 1.0 + 1e-8)
        throw OutOfRange("spectral_gap: omega is not within [0, I]");
    for (Eigen::Index k = 1; k < eig.values.size(); ++k)
        if (eig.values(k) < top - 1e-9) return top - eig.values(k);
    return 0.0;
}

VerificationStrategy single_qubit_strategy(const UnitaryGate& u) {
    if (u.n_qubits() != 1)
        throw WrongArity("single_qubit_strategy: gate must act on one qubit");
    struct Item {
        const char* state;
        int sigma;
        int sign;
    };
    // Eigenstate of sigma with eigenvalue s, measured at U sigma U^dag.
    static const Item items[] = {
        {"0", 3, +1}, {"1", 3, -1}, {"+", 1, +1}, {"-", 1, -1}, {"+i", 2, +1}, {"-i", 2, -1},
    };
    std::vector<ProbingSetting> settings;
    for (const auto& it : items) {
        settings.push_back(ProbingSetting{
            it.state,
            DensityMatrix::pure(named_ket(it.state)),
            conjugated_observable(u, pauli(it.sigma)),
            it.sign,
            1.0 / 6.0,
        });
    }
    CMat omega = strategy_omega(settings);
    return VerificationStrategy{u, std::move(settings), omega, spectral_gap(omega)};
}

VerificationStrategy cnot_strategy() {
    UnitaryGate gate = UnitaryGate::cnot();
    struct Family {
        const char* name;
        int sigma_q1;  // Pauli index on qubit 1 (0 = identity)
        int sigma_q2;
    };
    // Input stabilizers as realized by the eight mixed preparations; the
    // measurement basis follows by conjugation through CNOT.
    static const Family families[] = {
        {"IZ", 0, 3},  // I x Z: qubit 2 fixed, qubit 1 mixed
        {"ZI", 3, 0},  // Z x I: qubit 1 fixed, qubit 2 mixed
        {"IX", 1, 0},  // X x I as printed in the source listing
        {"XI", 0, 1},  // I x X
    };
    std::vector<ProbingSetting> settings;
    for (const auto& fam : families) {
        CMat stab = tensor(pauli(fam.sigma_q1), pauli(fam.sigma_q2));
        CMat observable = conjugated_observable(gate, stab);
        for (int sign : {+1, -1}) {
            // Fixed factor: the sign eigenstate of the local Pauli; mixed
            // factor decomposed into the two eigenstates of the same kind.
            const bool x_basis = (fam.sigma_q1 == 1 || fam.sigma_q2 == 1);
            const std::string fixed = x_basis ? (sign > 0 ? "+" : "-") : (sign > 0 ? "0" : "1");
            const char* mixed_pair[2] = {x_basis ? "+" : "0", x_basis ? "-" : "1"};
            for (const char* aux : mixed_pair) {
                CVec q1, q2;
                if (fam.sigma_q1 != 0) {
                    q1 = named_ket(fixed);
                    q2 = named_ket(aux);
                } else {
                    q1 = named_ket(aux);
                    q2 = named_ket(fixed);
                }
                CVec v(4);
                v << q1(0) * q2(0), q1(0) * q2(1), q1(1) * q2(0), q1(1) * q2(1);
                std::string label = std::string(fam.name) + (sign > 0 ? "+" : "-") + "/" + aux;
                settings.push_back(ProbingSetting{
                    label, DensityMatrix::pure(v), observable, sign, 1.0 / 16.0});
            }
        }
    }
    CMat omega = strategy_omega(settings);
    return VerificationStrategy{gate, std::move(settings), omega, spectral_gap(omega)};
}

bool judge(const ProbingSetting& setting, int outcome) {
    return outcome == setting.pass_sign;
}

double pass_probability(const VerificationStrategy& strategy, const QuantumChannel& channel) {
    if (channel.dim() != strategy.gate.dim())
        throw DimensionMismatch("pass_probability: dimension mismatch");
    double p = 0.0;
    for (const auto& s : strategy.settings) {
        CMat q = projector_onto_sign(s.observable, s.pass_sign);
        p += s.probability * (q * apply(channel, s.input_state).matrix()).trace().real();
    }
    return std::min(1.0, std::max(0.0, p));
}

}  // namespace qgv
