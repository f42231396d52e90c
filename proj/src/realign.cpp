#include "luq/realign.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "luq/errors.hpp"

namespace luq {

CVector vec(const CMatrix& a) {
    CVector out(a.size());
    Index k = 0;
    for (Index c = 0; c < a.cols(); ++c)
        for (Index r = 0; r < a.rows(); ++r) out(k++) = a(r, c);
    return out;
}

CMatrix unvec(const CVector& v, Index rows, Index cols) {
    if (v.size() != rows * cols)
        throw DimensionMismatch("unvec: vector length " + std::to_string(v.size()) +
                                " does not fill " + std::to_string(rows) + "x" +
                                std::to_string(cols));
    CMatrix out(rows, cols);
    Index k = 0;
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) out(r, c) = v(k++);
    return out;
}

RealignedMatrix realign(const CMatrix& z, Index dim_a, Index dim_b) {
    const Index m = dim_a, n = dim_b;
    if (z.rows() != m * n || z.cols() != m * n)
        throw DimensionMismatch("realign: expected " + std::to_string(m * n) + "x" +
                                std::to_string(m * n) + ", got " + std::to_string(z.rows()) +
                                "x" + std::to_string(z.cols()));
    CMatrix out(m * m, n * n);
    // row (j*M + i) <- vec of the N x N block at block position (i, j)
    for (Index j = 0; j < m; ++j)
        for (Index i = 0; i < m; ++i) {
            Index k = 0;
            const Index row = j * m + i;
            for (Index bc = 0; bc < n; ++bc)
                for (Index br = 0; br < n; ++br) out(row, k++) = z(i * n + br, j * n + bc);
        }
    return RealignedMatrix{std::move(out), m, n};
}

CMatrix unrealign(const RealignedMatrix& r) {
    const Index m = r.dim_a, n = r.dim_b;
    if (r.mat.rows() != m * m || r.mat.cols() != n * n)
        throw DimensionMismatch("unrealign: inconsistent dims");
    CMatrix out(m * n, m * n);
    for (Index j = 0; j < m; ++j)
        for (Index i = 0; i < m; ++i) {
            Index k = 0;
            const Index row = j * m + i;
            for (Index bc = 0; bc < n; ++bc)
                for (Index br = 0; br < n; ++br) out(i * n + br, j * n + bc) = r.mat(row, k++);
        }
    return out;
}

TopSingular top_singular_pair(const RealignedMatrix& r) {
    Eigen::JacobiSVD<CMatrix> svd(r.mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (!sv.allFinite()) throw SvdFailure("singular values are not finite");
    TopSingular out;
    out.sigma1 = sv.size() > 0 ? sv(0) : 0.0;
    out.sigma2 = sv.size() > 1 ? sv(1) : 0.0;
    if (svd.matrixU().cols() > 0) {
        out.u = svd.matrixU().col(0);
        out.v = svd.matrixV().col(0);
    } else {
        out.u = CVector::Unit(r.mat.rows(), 0);
        out.v = CVector::Unit(r.mat.cols(), 0);
    }
    return out;
}

FactorPair extract_factors(const RealignedMatrix& r, GaugePolicy gauge) {
    (void)gauge;  // single policy
    const Index m = r.dim_a, n = r.dim_b;
    const TopSingular top = top_singular_pair(r);
    if (top.sigma1 < 1e-12)
        throw RankDeficient("leading singular value is numerically zero");

    // phase gauge: largest-modulus entry of the M x M factor, scanned
    // row-major with ties to the smallest index, becomes real nonnegative
    const CMatrix raw = unvec(top.u, m, m);
    Index br = 0, bc = 0;
    double best = -1.0;
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j)
            if (std::abs(raw(i, j)) > best + 1e-15) {
                best = std::abs(raw(i, j));
                br = i;
                bc = j;
            }
    Complex phase(1.0, 0.0);
    if (best > 0.0) phase = std::conj(raw(br, bc)) / best;

    FactorPair out;
    const double root_m = std::sqrt(static_cast<double>(m));
    out.u1 = unvec(top.u * (root_m * phase), m, m);
    out.u2 = unvec(top.v.conjugate() * (top.sigma1 / root_m / phase), n, n);
    out.decomposition_residual = (r.mat - vec(out.u1) * vec(out.u2).transpose()).norm();
    out.unitarity_defect = std::max(
        (out.u1.adjoint() * out.u1 - CMatrix::Identity(m, m)).norm(),
        (out.u2.adjoint() * out.u2 - CMatrix::Identity(n, n)).norm());
    return out;
}

}  // namespace luq
