#pragma once

#include "luq/matrix.hpp"

namespace luq {

/// Column-stacking map: vec(A) = (a_11, ..., a_M1, a_12, ..., a_MN)^t.
CVector vec(const CMatrix& a);

/// Inverse of vec: refills an rows x cols matrix column by column.
CMatrix unvec(const CVector& v, Index rows, Index cols);

/// The realignment of an MN x MN matrix seen as an M x M grid of N x N
/// blocks: row (j-1)M + i of the result is vec(Z_ij)^t, so the output is
/// M^2 x N^2 and realign(A kron B) == vec(A) vec(B)^t holds entrywise.
struct RealignedMatrix {
    CMatrix mat;   // M^2 x N^2
    Index dim_a = 0;
    Index dim_b = 0;
};

RealignedMatrix realign(const CMatrix& z, Index dim_a, Index dim_b);

/// Inverse of realign (exact entry permutation).
CMatrix unrealign(const RealignedMatrix& r);

struct TopSingular {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    CVector u;  // unit left singular vector for sigma1
    CVector v;  // unit right singular vector for sigma1
};

/// Two largest singular values of R with the leading singular pair.
TopSingular top_singular_pair(const RealignedMatrix& r);

/// Kronecker factors recovered from a (near-)rank-one realigned matrix.
struct FactorPair {
    CMatrix u1;  // M x M
    CMatrix u2;  // N x N
    double decomposition_residual = 0.0;  // ||V - u1 kron u2||_F
    double unitarity_defect = 0.0;        // max of the two factors' defects
};

enum class GaugePolicy { LargestEntryRealNonnegative };

/// Extracts balanced factors from R = realign(V): u1 carries ||u1||_F^2 = M so
/// the scale freedom of the pair is eliminated, and the U(1) phase is fixed by
/// the gauge policy. Throws RankDeficient when sigma1 < 1e-12.
FactorPair extract_factors(const RealignedMatrix& r,
                           GaugePolicy gauge = GaugePolicy::LargestEntryRealNonnegative);

}  // namespace luq
