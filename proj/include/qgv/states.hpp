#pragma once

// Qubit states and gates shared by the channel and verification layers.

#include <string>

#include "qgv/linalg.hpp"

namespace qgv {

class DensityMatrix {
  public:
    /// Validates Hermiticity (1e-10), unit trace (1e-10) and positivity
    /// (eigenvalues >= -1e-10).
    static DensityMatrix from_matrix(CMat m);

    /// |v><v| after normalization.
    static DensityMatrix pure(const CVec& v);

    static DensityMatrix maximally_mixed(int dim);

    const CMat& matrix() const { return mat_; }
    int dim() const { return int(mat_.rows()); }

  private:
    explicit DensityMatrix(CMat m) : mat_(std::move(m)) {}
    CMat mat_;
};

class UnitaryGate {
  public:
    /// Throws NotUnitary when ||U^dag U - I||_F > tol.
    static UnitaryGate from_matrix(CMat m, double tol = 1e-8);

    /// Polar projection onto the unitary group; absorbs rounded constants
    /// (entries given to a few decimals) before the strict check.
    static UnitaryGate closest_unitary(const CMat& m);

    static UnitaryGate identity(int n_qubits);
    static UnitaryGate cnot();

    const CMat& matrix() const { return mat_; }
    int n_qubits() const { return n_qubits_; }
    int dim() const { return int(mat_.rows()); }

  private:
    UnitaryGate(int n, CMat m) : n_qubits_(n), mat_(std::move(m)) {}
    int n_qubits_;
    CMat mat_;
};

/// Named single-qubit kets: "0", "1", "+", "-", "+i", "-i".
CVec named_ket(const std::string& name);

}  // namespace qgv
