#pragma once

#include <utility>
#include <vector>

#include "luq/density.hpp"
#include "luq/matrix.hpp"

namespace luq {

/// Eigendecomposition rho = basis * diag(eigenvalues) * basis^dag with
/// eigenvalues sorted descending and a deterministic eigenvector convention:
/// each column's largest-modulus entry is made real nonnegative, and columns
/// within a numerically tied eigenvalue run are ordered lexicographically.
struct SpectralDecomposition {
    RVector eigenvalues;  // length MN, descending
    CMatrix basis;        // MN x MN unitary
};

/// Intra-tie column ordering; LexDescending exists as a test hook to show
/// verdicts do not depend on the tie-break on non-degenerate inputs.
enum class TieBreak { LexAscending, LexDescending };

SpectralDecomposition spectral_decompose(const BipartiteDensity& rho,
                                         TieBreak tie = TieBreak::LexAscending);

/// Same, for any Hermitian matrix (no density validation).
SpectralDecomposition spectral_decompose_hermitian(const CMatrix& m,
                                                   TieBreak tie = TieBreak::LexAscending);

/// True iff max_i |a_i - b_i| <= tol. Both inputs sorted descending.
/// Throws LengthMismatch.
bool spectra_match(const RVector& a, const RVector& b, double tol);

/// Index of the first entry where the two sorted spectra differ beyond tol,
/// or -1 if they match. Throws LengthMismatch.
Index first_spectra_mismatch(const RVector& a, const RVector& b, double tol);

struct EigenvalueCluster {
    double representative = 0.0;  // cluster mean
    Index multiplicity = 0;
};

struct DegeneracyProfile {
    std::vector<EigenvalueCluster> multiplicities;
    bool is_nondegenerate = false;
};

/// Clusters a descending spectrum into maximal runs with consecutive gaps
/// below gap_tol.
DegeneracyProfile degeneracy_profile(const RVector& eigenvalues, double gap_tol);

}  // namespace luq
