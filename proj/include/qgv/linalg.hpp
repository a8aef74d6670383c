#pragma once

// Dense complex linear algebra for the tiny dimensions (<= 16) this
// toolkit works with.  Everything is a value type; all functions are pure.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qgv/errors.hpp"

namespace qgv {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kInvolutionTol = 1e-8;

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// vectors.col(k) is the unit eigenvector paired with values(k).
struct HermEig {
    Eigen::VectorXd values;
    CMat vectors;
};

CMat dagger(const CMat& a);

double frob_norm(const CMat& a);

bool is_hermitian(const CMat& a, double tol = kHermTol);

/// Kronecker product; dimensions multiply.
CMat tensor(const CMat& a, const CMat& b);

CMat tensor(const std::vector<CMat>& factors);

/// Throws NotHermitian when ||a - a^dag||_F > tol.
HermEig eig_hermitian(const CMat& a, double tol = kHermTol);

/// (I + sign*obs)/2 for a Hermitian involution obs.  Throws NotInvolution.
CMat projector_onto_sign(const CMat& obs, int sign, double tol = kInvolutionTol);

/// Single-qubit Pauli matrix, index 0..3 = I, X, Y, Z.
const CMat& pauli(int index);

/// The 4^n Pauli strings for n qubits in lexicographic order
/// (I, X, Y, Z per factor, leftmost factor most significant).
std::vector<CMat> pauli_strings(int n_qubits);

/// Label like "XZ" for the Pauli string at the given lexicographic index.
std::string pauli_label(int n_qubits, int index);

}  // namespace qgv
