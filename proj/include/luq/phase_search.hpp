#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "luq/config.hpp"
#include "luq/matrix.hpp"
#include "luq/realign.hpp"

namespace luq {

/// A point on the phase torus with the global phase gauged out: theta[0] == 0.
struct PhaseVector {
    RVector theta;  // length MN, entries in [0, 2pi)
};

/// Wraps angles into [0, 2pi) and subtracts theta[0] from every component.
PhaseVector gauge_fix(const RVector& theta);

/// Linearization of the realigned coset slice: with T_k = realign(x_k y_k^dag)
/// the realignment of V(theta) = X D(theta) Y^dag is sum_k e^{i theta_k} T_k.
struct CosetTensor {
    Index dim_a = 0;
    Index dim_b = 0;
    std::vector<CMatrix> terms;  // MN matrices, each M^2 x N^2

    Index dim() const { return dim_a * dim_b; }
};

/// Throws NotUnitary unless X and Y are unitary MN x MN.
CosetTensor build_coset_tensor(const CMatrix& x, const CMatrix& y, Index dim_a, Index dim_b);

/// sum_k e^{i theta_k} T_k, the realigned matrix of V(theta).
CMatrix coset_matrix(const CosetTensor& ct, const PhaseVector& theta);

/// f(theta) = MN - sigma1(Vt(theta))^2, clamped at 0. Zero within rank_tol
/// exactly when Vt(theta) is numerically rank one.
double objective(const CosetTensor& ct, const PhaseVector& theta);

/// Analytic gradient of f; valid while sigma1 is simple. Throws
/// DegenerateSingularValue when sigma1 - sigma2 <= 1e-12 (callers fall back to
/// a subgradient step). Component 0 is reported as-is; the search holds the
/// gauge by masking it.
RVector gradient(const CosetTensor& ct, const PhaseVector& theta);

/// Entry classification used by the structural test.
enum class EntryClass { IdenticallyZero, CertainlyNonzero, Undetermined };

struct StructuralReport {
    bool feasible = true;
    /// When infeasible: an entry (p, q) that is zero for every theta although
    /// row p and column q each host an entry that is nonzero for every theta.
    std::optional<std::pair<Index, Index>> certificate;
};

/// Refutes rank-one reachability when the tensor's support cannot fill the
/// combinatorial rectangle a rank-one matrix requires. "feasible" only means
/// not refuted.
StructuralReport structural_check(const CosetTensor& ct);

struct SearchResult {
    PhaseVector best;
    double f_best = 0.0;
    long evaluations = 0;
    int best_restart = -1;
};

/// Multistart gradient descent with backtracking on the gauge-fixed torus.
/// Restart 0 starts at theta = 0; later restarts draw uniform angles from a
/// stream split per restart index, so the merge (first restart reaching
/// f <= f_stop, else lowest f with ties by index) is order-independent.
SearchResult search_phases(const CosetTensor& ct, const SearchConfig& cfg);

}  // namespace luq
