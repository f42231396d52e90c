#include "luq/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "luq/errors.hpp"

namespace luq {
namespace {

// Multiply each column by a unit phase so its largest-modulus entry (ties:
// smallest index) becomes real nonnegative.
void fix_column_phases(CMatrix& basis) {
    for (Index c = 0; c < basis.cols(); ++c) {
        Index arg = 0;
        double best = -1.0;
        for (Index r = 0; r < basis.rows(); ++r) {
            const double a = std::abs(basis(r, c));
            if (a > best + 1e-15) {
                best = a;
                arg = r;
            }
        }
        if (best > 0.0) {
            const Complex phase = basis(arg, c) / best;
            basis.col(c) *= std::conj(phase);
        }
    }
}

bool lex_less(const CMatrix& basis, Index a, Index b) {
    for (Index r = 0; r < basis.rows(); ++r) {
        const Complex& x = basis(r, a);
        const Complex& y = basis(r, b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

SpectralDecomposition decompose(const CMatrix& m, TieBreak tie) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw EigSolverFailure("eigenvalue computation did not converge");

    const Index n = m.rows();
    RVector vals(n);
    CMatrix basis(n, n);
    // solver returns ascending order; flip to descending
    for (Index i = 0; i < n; ++i) {
        vals(i) = solver.eigenvalues()(n - 1 - i);
        basis.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    fix_column_phases(basis);

    // reorder within numerically tied runs for a deterministic basis
    const double tie_tol = 1e-13 * std::max(1.0, std::abs(vals(0)));
    Index start = 0;
    while (start < n) {
        Index end = start + 1;
        while (end < n && vals(end - 1) - vals(end) <= tie_tol) ++end;
        if (end - start > 1) {
            std::vector<Index> order(static_cast<size_t>(end - start));
            std::iota(order.begin(), order.end(), start);
            std::sort(order.begin(), order.end(), [&](Index a, Index b) {
                return tie == TieBreak::LexAscending ? lex_less(basis, a, b)
                                                     : lex_less(basis, b, a);
            });
            CMatrix cols(n, end - start);
            RVector tied(end - start);
            for (Index k = 0; k < end - start; ++k) {
                cols.col(k) = basis.col(order[static_cast<size_t>(k)]);
                tied(k) = vals(order[static_cast<size_t>(k)]);
            }
            basis.middleCols(start, end - start) = cols;
            vals.segment(start, end - start) = tied;
        }
        start = end;
    }

    return SpectralDecomposition{std::move(vals), std::move(basis)};
}

}  // namespace

SpectralDecomposition spectral_decompose(const BipartiteDensity& rho, TieBreak tie) {
    return decompose(rho.mat, tie);
}

SpectralDecomposition spectral_decompose_hermitian(const CMatrix& m, TieBreak tie) {
    if (m.rows() != m.cols())
        throw DimensionMismatch("expected a square matrix");
    return decompose(m, tie);
}

bool spectra_match(const RVector& a, const RVector& b, double tol) {
    return first_spectra_mismatch(a, b, tol) < 0;
}

Index first_spectra_mismatch(const RVector& a, const RVector& b, double tol) {
    if (a.size() != b.size())
        throw LengthMismatch("spectra lengths differ: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    for (Index i = 0; i < a.size(); ++i)
        if (std::abs(a(i) - b(i)) > tol) return i;
    return -1;
}

DegeneracyProfile degeneracy_profile(const RVector& eigenvalues, double gap_tol) {
    DegeneracyProfile out;
    out.is_nondegenerate = true;
    const Index n = eigenvalues.size();
    Index start = 0;
    while (start < n) {
        Index end = start + 1;
        while (end < n && eigenvalues(end - 1) - eigenvalues(end) < gap_tol) ++end;
        EigenvalueCluster cluster;
        cluster.multiplicity = end - start;
        cluster.representative = eigenvalues.segment(start, end - start).mean();
        if (cluster.multiplicity > 1) out.is_nondegenerate = false;
        out.multiplicities.push_back(cluster);
        start = end;
    }
    return out;
}

}  // namespace luq
