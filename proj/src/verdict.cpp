#include "luq/verdict.hpp"

#include <cmath>
#include <string>

#include "luq/errors.hpp"
#include "luq/phase_search.hpp"
#include "luq/rng.hpp"

namespace luq {
namespace {

/// Raw (unnormalized) spectra must agree: proportional spectra with different
/// overall scale are not equivalent as given.
RVector raw_spectrum(const SpectralDecomposition& s, const BipartiteDensity& rho) {
    return s.eigenvalues * rho.original_trace;
}

/// Pulls the located coset element onto the decomposable set by alternating
/// the best rank-one realignment with the diagonal-phase fit. The tail
/// singular mass is free of the cancellation that limits MN - sigma1^2, so
/// the witness can be driven to verification precision.
PhaseVector polish_phases(const CMatrix& x, const CMatrix& y, Index m, Index n,
                          PhaseVector theta) {
    PhaseVector best = theta;
    double best_tail = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 200; ++iter) {
        CVector d(theta.theta.size());
        for (Index k = 0; k < theta.theta.size(); ++k)
            d(k) = std::exp(Complex(0.0, theta.theta(k)));
        const CMatrix v = x * d.asDiagonal() * y.adjoint();
        const RealignedMatrix r = realign(v, m, n);
        const TopSingular top = top_singular_pair(r);
        const CMatrix rank_one = top.sigma1 * top.u * top.v.adjoint();
        const double tail = (r.mat - rank_one).squaredNorm();
        if (tail < best_tail) {
            best_tail = tail;
            best = theta;
        }
        if (tail <= 1e-26) break;
        const CMatrix fit = x.adjoint() * unrealign({rank_one, m, n}) * y;
        RVector next(theta.theta.size());
        for (Index k = 0; k < next.size(); ++k) next(k) = std::arg(fit(k, k));
        theta = gauge_fix(next);
    }
    return best;
}

}  // namespace

Verdict decide(const BipartiteDensity& rho, const BipartiteDensity& rho_prime,
               const DecideConfig& cfg, TieBreak tie) {
    if (rho.dim_a != rho_prime.dim_a || rho.dim_b != rho_prime.dim_b)
        throw DimensionMismatch("states live on different bipartitions");

    const SpectralDecomposition sx = spectral_decompose(rho, tie);
    const SpectralDecomposition sy = spectral_decompose(rho_prime, tie);

    // (1) global spectra
    const RVector lam = raw_spectrum(sx, rho);
    const RVector lam_p = raw_spectrum(sy, rho_prime);
    const double scale = std::max({1.0, rho.original_trace, rho_prime.original_trace});
    if (const Index i = first_spectra_mismatch(lam, lam_p, cfg.spectra_tol * scale); i >= 0) {
        Verdict v;
        v.outcome = NotEquivalentOutcome{SpectrumMismatch{i, lam(i), lam_p(i)}};
        return v;
    }

    // (2) degeneracy decides refutation authority below
    const DegeneracyProfile profile = degeneracy_profile(sx.eigenvalues, cfg.gap_tol);

    // (3) linearize the realigned coset slice
    const CosetTensor ct = build_coset_tensor(sx.basis, sy.basis, rho.dim_a, rho.dim_b);

    // (4) combinatorial refutation, authoritative only without degeneracy
    const StructuralReport structural = structural_check(ct);
    if (!structural.feasible && profile.is_nondegenerate) {
        Verdict v;
        v.outcome = NotEquivalentOutcome{
            StructuralInfeasibility{structural.certificate->first, structural.certificate->second}};
        return v;
    }

    // (5) reduced spectra are local-unitary invariants of each marginal;
    // a cheap necessary condition ahead of the search
    for (const Keep keep : {Keep::A, Keep::B}) {
        const RVector ra = spectral_decompose_hermitian(partial_trace(rho, keep)).eigenvalues;
        const RVector rb = spectral_decompose_hermitian(partial_trace(rho_prime, keep)).eigenvalues;
        if (const Index i = first_spectra_mismatch(ra, rb, cfg.reduced_spectra_tol); i >= 0) {
            Verdict v;
            v.outcome = NotEquivalentOutcome{ReducedSpectrumMismatch{
                keep == Keep::A ? Subsystem::A : Subsystem::B, i, ra(i), rb(i)}};
            return v;
        }
    }

    // (6) search the phase torus for a decomposable element
    const SearchResult sr = search_phases(ct, cfg.search);
    Verdict v;
    v.f_best = sr.f_best;
    v.evaluations = sr.evaluations;

    if (sr.f_best <= cfg.search.rank_tol) {
        const PhaseVector refined =
            polish_phases(sx.basis, sy.basis, rho.dim_a, rho.dim_b, sr.best);
        const CMatrix vt = coset_matrix(ct, refined);
        const FactorPair factors = extract_factors({vt, rho.dim_a, rho.dim_b});
        // V(theta) = u1 kron u2 conjugates rho' into rho; Eq-style witnesses
        // go the other way, so the adjoints are reported
        FactorPair witness;
        witness.u1 = factors.u1.adjoint();
        witness.u2 = factors.u2.adjoint();
        witness.decomposition_residual = factors.decomposition_residual;
        witness.unitarity_defect = factors.unitarity_defect;
        const double residual = verify_witness(rho, rho_prime, witness);
        if (residual <= cfg.verify_tol) {
            v.outcome = EquivalentOutcome{witness, residual};
            return v;
        }
    }

    // (7) a failed local search refutes nothing
    v.outcome = InconclusiveOutcome{profile.is_nondegenerate ? InconclusiveReason::SearchExhausted
                                                             : InconclusiveReason::Degenerate,
                                    sr.f_best};
    return v;
}

double verify_witness(const BipartiteDensity& rho, const BipartiteDensity& rho_prime,
                      const FactorPair& pair) {
    if (rho.dim_a != rho_prime.dim_a || rho.dim_b != rho_prime.dim_b)
        throw DimensionMismatch("states live on different bipartitions");
    if (pair.u1.rows() != rho.dim_a || pair.u1.cols() != rho.dim_a ||
        pair.u2.rows() != rho.dim_b || pair.u2.cols() != rho.dim_b)
        throw DimensionMismatch("witness factors do not match the bipartition");
    const CMatrix k = kron(pair.u1, pair.u2);
    return (rho_prime.mat - k * rho.mat * k.adjoint()).norm();
}

LuPair gen_lu_pair(Index dim_a, Index dim_b, std::uint64_t seed, SpectrumPolicy policy) {
    const Index n = dim_a * dim_b;
    if (n > 64) throw DimensionMismatch("gen_lu_pair: MN must stay within 64");
    Rng rng(seed);

    const double min_gap = policy == SpectrumPolicy::NonDegenerate ? 1e-7 : 0.0;
    const RVector spectrum = simplex_spectrum(n, rng, min_gap);
    const CMatrix w = haar_unitary(n, rng);
    CMatrix rho_mat = w * spectrum.asDiagonal() * w.adjoint();
    rho_mat = 0.5 * (rho_mat + rho_mat.adjoint().eval());

    LuPair out;
    out.u1 = haar_unitary(dim_a, rng);
    out.u2 = haar_unitary(dim_b, rng);
    const CMatrix k = kron(out.u1, out.u2);
    CMatrix rho_p_mat = k * rho_mat * k.adjoint();
    rho_p_mat = 0.5 * (rho_p_mat + rho_p_mat.adjoint().eval());

    out.rho = validate_density(rho_mat, dim_a, dim_b);
    out.rho_prime = validate_density(rho_p_mat, dim_a, dim_b);
    return out;
}

EdgeState edge_state(double a, double b, double c, double gap_tol) {
    for (const double p : {a, b, c})
        if (!(p > 0.0) || !std::isfinite(p))
            throw NonPositiveParameter("edge state parameters must be positive, got a=" +
                                       std::to_string(a) + " b=" + std::to_string(b) +
                                       " c=" + std::to_string(c));
    CMatrix m = CMatrix::Zero(8, 8);
    m(0, 0) = 1.0;
    m(1, 1) = a;
    m(2, 2) = b;
    m(3, 3) = c;
    m(4, 4) = 1.0 / c;
    m(5, 5) = 1.0 / b;
    m(6, 6) = 1.0 / a;
    m(7, 7) = 1.0;
    m(0, 7) = 1.0;
    m(7, 0) = 1.0;

    EdgeState out;
    out.density = validate_density(m, 2, 4);
    out.spectrum = spectral_decompose(out.density).eigenvalues;
    out.nondegenerate = degeneracy_profile(out.spectrum, gap_tol).is_nondegenerate;
    return out;
}

}  // namespace luq
