#pragma once

#include "luq/config.hpp"
#include "luq/matrix.hpp"

namespace luq {

/// A validated bipartite density matrix on C^M (x) C^N. Entries are stored
/// trace-normalized; the raw input trace is kept so callers can distinguish
/// states that differ only by overall scale.
struct BipartiteDensity {
    Index dim_a = 0;          // M >= 2
    Index dim_b = 0;          // N >= 2
    CMatrix mat;              // MN x MN, Hermitian PSD, unit trace
    double original_trace = 1.0;

    Index dim() const { return dim_a * dim_b; }
};

/// Validates m as an (unnormalized) density matrix on C^M (x) C^N and returns
/// it trace-normalized. Throws DimensionMismatch, NotHermitian, NotPositive,
/// or ZeroTrace.
BipartiteDensity validate_density(const CMatrix& m, Index dim_a, Index dim_b,
                                  const Tolerances& tols = {});

enum class Keep { A, B };

/// Partial trace: keep=A gives the M x M marginal, keep=B the N x N one.
CMatrix partial_trace(const BipartiteDensity& rho, Keep keep);

}  // namespace luq
