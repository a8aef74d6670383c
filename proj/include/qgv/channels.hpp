#pragma once

// Quantum channels in Kraus form, standard noise models, chi-matrix
// conversion and fidelities.

#include <variant>
#include <vector>

#include "qgv/states.hpp"

namespace qgv {

class QuantumChannel {
  public:
    /// Validates trace preservation: sum K^dag K = I within 1e-10.
    static QuantumChannel from_kraus(int n_qubits, std::vector<CMat> kraus);

    static QuantumChannel identity(int n_qubits);

    const std::vector<CMat>& kraus() const { return kraus_; }
    int n_qubits() const { return n_qubits_; }
    int dim() const { return 1 << n_qubits_; }

  private:
    QuantumChannel(int n, std::vector<CMat> k) : n_qubits_(n), kraus_(std::move(k)) {}
    int n_qubits_;
    std::vector<CMat> kraus_;
};

/// chi matrix in the Pauli operator basis {I,X,Y,Z}^n (lexicographic),
/// normalized so Tr(chi) = 1.  The channel action is
///   rho -> sum_mn chi_mn P_m rho P_n^dag .
struct ProcessMatrix {
    int n_qubits;
    CMat chi;
};

struct DepolarizingNoise { double p; };
struct AmplitudeDampingNoise { double gamma; };
struct OverRotationNoise { double axis[3]; double angle; };
struct NoiseModel;
struct CompositeNoise { std::vector<NoiseModel> parts; };
struct NoiseModel {
    std::variant<DepolarizingNoise, AmplitudeDampingNoise, OverRotationNoise, CompositeNoise> kind;
};

/// Channel with the single Kraus operator u.  Throws NotUnitary.
QuantumChannel unitary_channel(const UnitaryGate& u);

/// sum_k K rho K^dag.
DensityMatrix apply(const QuantumChannel& ch, const DensityMatrix& rho);

/// Standard Kraus sets.  Depolarizing acts globally: rho -> (1-p) rho + p I/2^n.
/// Amplitude damping and over-rotation act independently on each qubit.
QuantumChannel make_noise(const NoiseModel& model, int n_qubits);

/// after(before(rho)).
QuantumChannel compose(const QuantumChannel& after, const QuantumChannel& before);

/// Ideal unitary followed by a noise channel.
QuantumChannel device_channel(const UnitaryGate& u, const NoiseModel& noise);

ProcessMatrix channel_to_chi(const QuantumChannel& ch);

/// Channel action reconstructed from a chi matrix.
DensityMatrix chi_apply(const ProcessMatrix& chi, const DensityMatrix& rho);

/// Choi state (Lambda x Id)(|Phi><Phi|) with |Phi> = sum_i |ii>/sqrt(d).
DensityMatrix channel_choi_state(const QuantumChannel& ch);

/// Entanglement (process) fidelity.  Tr(chi_a chi_b) when either side is
/// rank one (unitary target); Uhlmann fidelity of the chi matrices otherwise.
double process_fidelity(const ProcessMatrix& a, const ProcessMatrix& b);

/// (d F_e + 1) / (d + 1).
double average_gate_fidelity(double entanglement_fidelity, int dim);

/// Depolarizing strength reproducing a target entanglement fidelity:
/// p = (1 - F) d^2 / (d^2 - 1).
NoiseModel calibrate_noise(double target_entanglement_fidelity, int n_qubits);

}  // namespace qgv
