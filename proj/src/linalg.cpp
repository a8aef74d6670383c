#include "qgv/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace qgv {

CMat dagger(const CMat& a) { return a.adjoint(); }

double frob_norm(const CMat& a) { return a.norm(); }

bool is_hermitian(const CMat& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).norm() <= tol;
}

CMat tensor(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMat tensor(const std::vector<CMat>& factors) {
    CMat out = CMat::Identity(1, 1);
    for (const auto& f : factors) out = tensor(out, f);
    return out;
}

HermEig eig_hermitian(const CMat& a, double tol) {
    if (a.rows() != a.cols() || (a - a.adjoint()).norm() > tol)
        throw NotHermitian("eig_hermitian: input is not Hermitian within tolerance");
    // Symmetrize so roundoff in the input cannot leak into the solver.
    CMat h = (a + a.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMat> solver(h);
    if (solver.info() != Eigen::Success)
        throw Error("eig_hermitian: eigensolver failed");
    const Eigen::Index n = h.rows();
    HermEig out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    // Eigen returns ascending order; flip to descending.
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = solver.eigenvalues()(n - 1 - k);
        out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return out;
}

CMat projector_onto_sign(const CMat& obs, int sign, double tol) {
    if (sign != 1 && sign != -1)
        throw OutOfRange("projector_onto_sign: sign must be +1 or -1");
    if (obs.rows() != obs.cols() || !is_hermitian(obs, tol))
        throw NotInvolution("projector_onto_sign: observable is not Hermitian");
    const Eigen::Index n = obs.rows();
    if ((obs * obs - CMat::Identity(n, n)).norm() > tol)
        throw NotInvolution("projector_onto_sign: observable squared is not the identity");
    return (CMat::Identity(n, n) + double(sign) * obs) / 2.0;
}

const CMat& pauli(int index) {
    static const std::vector<CMat> paulis = [] {
        std::vector<CMat> p(4, CMat(2, 2));
        p[0] << 1, 0, 0, 1;
        p[1] << 0, 1, 1, 0;
        p[2] << 0, Complex(0, -1), Complex(0, 1), 0;
        p[3] << 1, 0, 0, -1;
        return p;
    }();
    if (index < 0 || index > 3) throw OutOfRange("pauli: index must be 0..3");
    return paulis[index];
}

std::vector<CMat> pauli_strings(int n_qubits) {
    if (n_qubits < 1) throw OutOfRange("pauli_strings: n_qubits must be >= 1");
    std::vector<CMat> out;
    const int count = 1 << (2 * n_qubits);
    out.reserve(count);
    for (int idx = 0; idx < count; ++idx) {
        CMat m = CMat::Identity(1, 1);
        for (int q = 0; q < n_qubits; ++q) {
            int digit = (idx >> (2 * (n_qubits - 1 - q))) & 3;
            m = tensor(m, pauli(digit));
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::string pauli_label(int n_qubits, int index) {
    static const char names[] = "IXYZ";
    std::string s;
    for (int q = 0; q < n_qubits; ++q)
        s += names[(index >> (2 * (n_qubits - 1 - q))) & 3];
    return s;
}

}  // namespace qgv
