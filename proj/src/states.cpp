#include "qgv/states.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace qgv {

DensityMatrix DensityMatrix::from_matrix(CMat m) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("DensityMatrix: matrix must be square");
    if ((m - m.adjoint()).norm() > 1e-10)
        throw NotHermitian("DensityMatrix: not Hermitian");
    if (std::abs(m.trace().real() - 1.0) > 1e-10 || std::abs(m.trace().imag()) > 1e-10)
        throw OutOfRange("DensityMatrix: trace must be 1");
    Eigen::SelfAdjointEigenSolver<CMat> es((m + m.adjoint()) / 2.0);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw OutOfRange("DensityMatrix: negative eigenvalue");
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const CVec& v) {
    double n = v.norm();
    if (n == 0.0) throw OutOfRange("DensityMatrix::pure: zero vector");
    CVec u = v / n;
    return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    if (dim < 1) throw OutOfRange("DensityMatrix: dim must be >= 1");
    return DensityMatrix(CMat::Identity(dim, dim) / double(dim));
}

static int qubits_for_dim(Eigen::Index d) {
    int n = 0;
    Eigen::Index m = d;
    while (m > 1) {
        if (m % 2 != 0) throw DimensionMismatch("gate dimension is not a power of 2");
        m /= 2;
        ++n;
    }
    if (n == 0) throw DimensionMismatch("gate dimension must be >= 2");
    return n;
}

UnitaryGate UnitaryGate::from_matrix(CMat m, double tol) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("UnitaryGate: matrix must be square");
    int n = qubits_for_dim(m.rows());
    if ((m.adjoint() * m - CMat::Identity(m.rows(), m.cols())).norm() > tol)
        throw NotUnitary("UnitaryGate: U^dag U != I within tolerance");
    return UnitaryGate(n, std::move(m));
}

UnitaryGate UnitaryGate::closest_unitary(const CMat& m) {
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    CMat u = svd.matrixU() * svd.matrixV().adjoint();
    return from_matrix(std::move(u), 1e-12 * double(m.rows()) + 1e-12);
}

UnitaryGate UnitaryGate::identity(int n_qubits) {
    if (n_qubits < 1) throw OutOfRange("UnitaryGate: n_qubits must be >= 1");
    Eigen::Index d = Eigen::Index(1) << n_qubits;
    return UnitaryGate(n_qubits, CMat::Identity(d, d));
}

UnitaryGate UnitaryGate::cnot() {
    CMat m = CMat::Zero(4, 4);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return UnitaryGate(2, std::move(m));
}

CVec named_ket(const std::string& name) {
    const double s = 1.0 / std::sqrt(2.0);
    CVec v(2);
    if (name == "0")
        v << 1, 0;
    else if (name == "1")
        v << 0, 1;
    else if (name == "+")
        v << s, s;
    else if (name == "-")
        v << s, -s;
    else if (name == "+i")
        v << s, Complex(0, s);
    else if (name == "-i")
        v << s, Complex(0, -s);
    else
        throw OutOfRange("named_ket: unknown state name " + name);
    return v;
}

}  // namespace qgv
