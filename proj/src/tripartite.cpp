#include "luq/tripartite.hpp"

#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <string>

#include "luq/errors.hpp"
#include "luq/phase_search.hpp"

namespace luq {
namespace {

CMatrix pure_density(const CVector& amplitudes) {
    return amplitudes * amplitudes.adjoint();
}

/// Single-site marginals, each obtained through the matching bipartite cut.
struct Marginals {
    CMatrix a, b, c;
};

Marginals marginals(const PureTripartite& psi) {
    Marginals m;
    m.a = partial_trace(cut(psi, Cut::A_BC), Keep::A);
    m.b = partial_trace(cut(psi, Cut::AC_B), Keep::B);
    m.c = partial_trace(cut(psi, Cut::AB_C), Keep::B);
    return m;
}

/// Unitary polar factor of m (closest unitary in Frobenius norm).
CMatrix polar_unitary(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

double verify_triple(const PureTripartite& psi, const PureTripartite& psi_prime,
                     const CMatrix& ua, const CMatrix& ub, const CMatrix& uc) {
    const CMatrix u = kron(ua, kron(ub, uc));
    return (pure_density(psi_prime.amplitudes) -
            u * pure_density(psi.amplitudes) * u.adjoint())
        .norm();
}

/// Aligns per-site phases so that prime(i,j,k) ~ e^{i(a_i+b_j+c_k)} base(i,j,k):
/// coordinate ascent on Re sum conj(e^{i(a+b+c)}) prime conj(base), which is
/// exact when a solution exists and entries are generic.
void fit_phases(const PureTripartite& dims, const CVector& base, const CVector& prime,
                RVector& alpha, RVector& beta, RVector& gamma) {
    const Index da = dims.dim_a, db = dims.dim_b, dc = dims.dim_c;
    alpha = RVector::Zero(da);
    beta = RVector::Zero(db);
    gamma = RVector::Zero(dc);
    const auto r = [&](Index i, Index j, Index k) {
        const Index idx = (i * db + j) * dc + k;
        return prime(idx) * std::conj(base(idx));
    };
    for (int sweep = 0; sweep < 60; ++sweep) {
        for (Index i = 0; i < da; ++i) {
            Complex acc = 0.0;
            for (Index j = 0; j < db; ++j)
                for (Index k = 0; k < dc; ++k)
                    acc += r(i, j, k) * std::exp(Complex(0.0, -(beta(j) + gamma(k))));
            if (std::abs(acc) > 0.0) alpha(i) = std::arg(acc);
        }
        for (Index j = 0; j < db; ++j) {
            Complex acc = 0.0;
            for (Index i = 0; i < da; ++i)
                for (Index k = 0; k < dc; ++k)
                    acc += r(i, j, k) * std::exp(Complex(0.0, -(alpha(i) + gamma(k))));
            if (std::abs(acc) > 0.0) beta(j) = std::arg(acc);
        }
        for (Index k = 0; k < dc; ++k) {
            Complex acc = 0.0;
            for (Index i = 0; i < da; ++i)
                for (Index j = 0; j < db; ++j)
                    acc += r(i, j, k) * std::exp(Complex(0.0, -(alpha(i) + beta(j))));
            if (std::abs(acc) > 0.0) gamma(k) = std::arg(acc);
        }
    }
}

}  // namespace

PureTripartite make_pure_tripartite(Index dim_a, Index dim_b, Index dim_c,
                                    const CVector& amplitudes) {
    if (dim_a < 2 || dim_b < 2 || dim_c < 2)
        throw DimensionMismatch("tripartite dimensions must each be at least 2");
    if (amplitudes.size() != dim_a * dim_b * dim_c)
        throw InvalidState("amplitude vector length " + std::to_string(amplitudes.size()) +
                           " does not match dims");
    if (!amplitudes.allFinite()) throw InvalidState("amplitudes contain non-finite entries");
    const double norm = amplitudes.norm();
    if (norm < 1e-12) throw InvalidState("amplitude vector is numerically zero");
    PureTripartite out;
    out.dim_a = dim_a;
    out.dim_b = dim_b;
    out.dim_c = dim_c;
    out.amplitudes = amplitudes / norm;
    return out;
}

BipartiteDensity cut(const PureTripartite& psi, Cut which) {
    const Index da = psi.dim_a, db = psi.dim_b, dc = psi.dim_c;
    CVector amps = psi.amplitudes;
    Index m = 0, n = 0;
    switch (which) {
        case Cut::A_BC:
            m = da;
            n = db * dc;
            break;
        case Cut::AB_C:
            m = da * db;
            n = dc;
            break;
        case Cut::AC_B: {
            m = da * dc;
            n = db;
            CVector swapped(psi.dim());
            for (Index ia = 0; ia < da; ++ia)
                for (Index ib = 0; ib < db; ++ib)
                    for (Index ic = 0; ic < dc; ++ic)
                        swapped((ia * dc + ic) * db + ib) = amps((ia * db + ib) * dc + ic);
            amps = std::move(swapped);
            break;
        }
    }
    return validate_density(pure_density(amps), m, n);
}

TripartiteVerdict decide_pure_tripartite(const PureTripartite& psi, const PureTripartite& psi_prime,
                                         const DecideConfig& cfg, double tri_verify_tol) {
    if (psi.dim_a != psi_prime.dim_a || psi.dim_b != psi_prime.dim_b ||
        psi.dim_c != psi_prime.dim_c)
        throw DimensionMismatch("states live on different tripartitions");

    TripartiteVerdict verdict;
    double best_residual = std::numeric_limits<double>::quiet_NaN();

    // Schmidt spectra of every cut are carried by the single-site marginals;
    // any mismatch is a certified refutation.
    const Marginals ma = marginals(psi);
    const Marginals mb = marginals(psi_prime);
    const std::array<std::pair<Subsystem, std::pair<const CMatrix*, const CMatrix*>>, 3> sites = {
        {{Subsystem::A, {&ma.a, &mb.a}},
         {Subsystem::B, {&ma.b, &mb.b}},
         {Subsystem::C, {&ma.c, &mb.c}}}};
    std::array<SpectralDecomposition, 3> eig, eig_prime;
    for (size_t s = 0; s < sites.size(); ++s) {
        eig[s] = spectral_decompose_hermitian(*sites[s].second.first);
        eig_prime[s] = spectral_decompose_hermitian(*sites[s].second.second);
        if (const Index i = first_spectra_mismatch(eig[s].eigenvalues, eig_prime[s].eigenvalues,
                                                   cfg.reduced_spectra_tol);
            i >= 0) {
            verdict.outcome = TriNotEquivalent{ReducedSpectrumMismatch{
                sites[s].first, i, eig[s].eigenvalues(i), eig_prime[s].eigenvalues(i)}};
            return verdict;
        }
    }

    // Route 1: bipartite engine on the A|BC cut (sufficiency mode); its
    // BC-side factor still has to split into U_B kron U_C.
    const BipartiteDensity cut_a = cut(psi, Cut::A_BC);
    const BipartiteDensity cut_a_prime = cut(psi_prime, Cut::A_BC);
    const Verdict on_cut = decide(cut_a, cut_a_prime, cfg);
    if (on_cut.is_equivalent()) {
        const FactorPair& w = on_cut.equivalent().witness;
        const RealignedMatrix rbc = realign(w.u2, psi.dim_b, psi.dim_c);
        const TopSingular top = top_singular_pair(rbc);
        if (top.sigma2 <= 1e-6) {
            const FactorPair split = extract_factors(rbc);
            const double residual =
                verify_triple(psi, psi_prime, w.u1, split.u1, split.u2);
            best_residual = residual;
            if (residual <= tri_verify_tol) {
                verdict.outcome = TriEquivalent{{w.u1, split.u1, split.u2, residual}};
                return verdict;
            }
        }
    } else if (on_cut.is_not_equivalent()) {
        verdict.outcome = TriNotEquivalent{on_cut.not_equivalent().certificate};
        return verdict;
    }

    // Route 2: the mixed reduced pair rho_BC, rho'_BC through the bipartite
    // engine; a found (U_B, U_C) determines U_A up to a Procrustes fit.
    const BipartiteDensity rho_bc =
        validate_density(partial_trace(cut_a, Keep::B), psi.dim_b, psi.dim_c);
    const BipartiteDensity rho_bc_prime =
        validate_density(partial_trace(cut_a_prime, Keep::B), psi.dim_b, psi.dim_c);
    const Verdict on_bc = decide(rho_bc, rho_bc_prime, cfg);
    if (on_bc.is_equivalent()) {
        const FactorPair& w = on_bc.equivalent().witness;
        const CMatrix t = kron(w.u1, w.u2);
        const Index da = psi.dim_a, nbc = psi.dim_b * psi.dim_c;
        CMatrix psi_mat(da, nbc), psi_p_mat(da, nbc);
        for (Index i = 0; i < da; ++i)
            for (Index j = 0; j < nbc; ++j) {
                psi_mat(i, j) = psi.amplitudes(i * nbc + j);
                psi_p_mat(i, j) = psi_prime.amplitudes(i * nbc + j);
            }
        const CMatrix ua = polar_unitary(psi_p_mat * (psi_mat * t.transpose()).adjoint());
        const double residual = verify_triple(psi, psi_prime, ua, w.u1, w.u2);
        if (!(residual >= best_residual)) best_residual = residual;
        if (residual <= tri_verify_tol) {
            verdict.outcome = TriEquivalent{{ua, w.u1, w.u2, residual}};
            return verdict;
        }
    } else if (on_bc.is_not_equivalent()) {
        verdict.outcome = TriNotEquivalent{on_bc.not_equivalent().certificate};
        return verdict;
    }

    // Route 3: when every single-site marginal is non-degenerate, any witness
    // maps eigenbases to eigenbases, so only per-site phases remain free.
    bool all_nondegenerate = true;
    for (size_t s = 0; s < sites.size(); ++s)
        if (!degeneracy_profile(eig[s].eigenvalues, cfg.gap_tol).is_nondegenerate)
            all_nondegenerate = false;

    if (all_nondegenerate) {
        const CMatrix to_eig = kron(eig[0].basis, kron(eig[1].basis, eig[2].basis));
        const CMatrix to_eig_prime =
            kron(eig_prime[0].basis, kron(eig_prime[1].basis, eig_prime[2].basis));
        const CVector base = to_eig.adjoint() * psi.amplitudes;
        const CVector prime = to_eig_prime.adjoint() * psi_prime.amplitudes;

        RVector alpha, beta, gamma;
        fit_phases(psi, base, prime, alpha, beta, gamma);
        const auto phased = [](const SpectralDecomposition& from, const SpectralDecomposition& to,
                               const RVector& phases) {
            CVector d(phases.size());
            for (Index i = 0; i < phases.size(); ++i) d(i) = std::exp(Complex(0.0, phases(i)));
            return CMatrix(to.basis * d.asDiagonal() * from.basis.adjoint());
        };
        const CMatrix ua = phased(eig[0], eig_prime[0], alpha);
        const CMatrix ub = phased(eig[1], eig_prime[1], beta);
        const CMatrix uc = phased(eig[2], eig_prime[2], gamma);
        const double residual = verify_triple(psi, psi_prime, ua, ub, uc);
        if (!(residual >= best_residual)) best_residual = residual;
        if (residual <= tri_verify_tol) {
            verdict.outcome = TriEquivalent{{ua, ub, uc, residual}};
            return verdict;
        }
    }

    verdict.outcome = TriInconclusive{
        all_nondegenerate ? InconclusiveReason::SearchExhausted : InconclusiveReason::Degenerate,
        best_residual};
    return verdict;
}

}  // namespace luq
