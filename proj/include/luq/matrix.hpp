#pragma once

#include <Eigen/Dense>
#include <complex>

namespace luq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Frobenius distance to the nearest Hermitian matrix, relative to ||m||_F.
inline double hermiticity_defect(const CMatrix& m) {
    const double scale = m.norm();
    if (scale == 0.0) return 0.0;
    return (m - m.adjoint()).norm() / scale;
}

/// ||m^dag m - I||_F.
inline double unitarity_defect(const CMatrix& m) {
    return (m.adjoint() * m - CMatrix::Identity(m.cols(), m.cols())).norm();
}

/// Standard Kronecker product: (A kron B)[(i-1)N+k, (j-1)N+l] = A[i,j] B[k,l].
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline bool all_finite(const CMatrix& m) {
    return m.allFinite();
}

}  // namespace luq
