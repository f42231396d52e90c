#include "luq/density.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "luq/errors.hpp"

namespace luq {

BipartiteDensity validate_density(const CMatrix& m, Index dim_a, Index dim_b,
                                  const Tolerances& tols) {
    if (dim_a < 2 || dim_b < 2)
        throw DimensionMismatch("subsystem dimensions must be at least 2, got " +
                                std::to_string(dim_a) + "x" + std::to_string(dim_b));
    const Index n = dim_a * dim_b;
    if (m.rows() != n || m.cols() != n)
        throw DimensionMismatch("expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                " matrix for dims " + std::to_string(dim_a) + "x" +
                                std::to_string(dim_b) + ", got " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()));
    if (!all_finite(m))
        throw InvalidState("matrix contains non-finite entries");

    const double scale = m.norm();
    if (hermiticity_defect(m) > tols.herm)
        throw NotHermitian("asymmetry " + std::to_string(hermiticity_defect(m)) +
                           " exceeds tolerance");

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw EigSolverFailure("eigenvalue computation did not converge");
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tols.psd * scale)
        throw NotPositive(min_eig, "minimum eigenvalue " + std::to_string(min_eig) +
                                       " is below the PSD floor");

    const Complex tr = m.trace();
    if (!(tr.real() > tols.trace * std::max(1.0, scale)) ||
        std::abs(tr.imag()) > tols.trace * std::max(1.0, scale))
        throw ZeroTrace("trace must be real and positive, got (" + std::to_string(tr.real()) +
                        ", " + std::to_string(tr.imag()) + ")");

    BipartiteDensity out;
    out.dim_a = dim_a;
    out.dim_b = dim_b;
    out.original_trace = tr.real();
    out.mat = m / tr.real();
    return out;
}

CMatrix partial_trace(const BipartiteDensity& rho, Keep keep) {
    const Index m = rho.dim_a, n = rho.dim_b;
    if (keep == Keep::A) {
        CMatrix out = CMatrix::Zero(m, m);
        for (Index i = 0; i < m; ++i)
            for (Index j = 0; j < m; ++j)
                for (Index b = 0; b < n; ++b)
                    out(i, j) += rho.mat(i * n + b, j * n + b);
        return out;
    }
    CMatrix out = CMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            for (Index a = 0; a < m; ++a)
                out(i, j) += rho.mat(a * n + i, a * n + j);
    return out;
}

}  // namespace luq
