#include <doctest.h>

#include <cmath>
#include <numbers>

#include "luq/errors.hpp"
#include "luq/rng.hpp"
#include "luq/spectral.hpp"
#include "luq/tripartite.hpp"

using namespace luq;

namespace {

PureTripartite random_state(Index da, Index db, Index dc, std::uint64_t seed) {
    Rng rng(seed);
    CVector amps(da * db * dc);
    for (Index i = 0; i < amps.size(); ++i) amps(i) = rng.normal_complex();
    return make_pure_tripartite(da, db, dc, amps);
}

PureTripartite apply_triple(const PureTripartite& psi, const CMatrix& ua, const CMatrix& ub,
                            const CMatrix& uc) {
    const CVector out = kron(ua, kron(ub, uc)) * psi.amplitudes;
    return make_pure_tripartite(psi.dim_a, psi.dim_b, psi.dim_c, out);
}

}  // namespace

TEST_SUITE_BEGIN("tripartite");

TEST_CASE("construction validates and normalizes") {
    CVector amps = CVector::Zero(8);
    amps(0) = 2.0;
    const PureTripartite psi = make_pure_tripartite(2, 2, 2, amps);
    CHECK(std::abs(psi.amplitudes.norm() - 1.0) <= 1e-12);
    CHECK_THROWS_AS(make_pure_tripartite(2, 2, 2, CVector::Zero(8)), InvalidState);
    CHECK_THROWS_AS(make_pure_tripartite(2, 2, 2, CVector::Ones(6)), InvalidState);
    CHECK_THROWS_AS(make_pure_tripartite(1, 2, 2, CVector::Ones(4)), DimensionMismatch);
}

TEST_CASE("cuts of a product basis state are pure products") {
    CVector amps = CVector::Zero(8);
    amps(0) = 1.0;  // |000>
    const PureTripartite psi = make_pure_tripartite(2, 2, 2, amps);
    for (Cut which : {Cut::A_BC, Cut::AB_C, Cut::AC_B}) {
        const BipartiteDensity rho = cut(psi, which);
        const RVector reduced =
            spectral_decompose_hermitian(partial_trace(rho, Keep::A)).eigenvalues;
        CHECK(reduced(0) == doctest::Approx(1.0));
        for (Index i = 1; i < reduced.size(); ++i)
            CHECK(std::abs(reduced(i)) <= 1e-12);
    }
}

TEST_CASE("the A|BC cut of a GHZ-type state has a flat two-point spectrum") {
    CVector amps = CVector::Zero(8);
    amps(0) = 1.0;
    amps(7) = 1.0;
    const PureTripartite ghz = make_pure_tripartite(2, 2, 2, amps);
    const RVector reduced =
        spectral_decompose_hermitian(partial_trace(cut(ghz, Cut::A_BC), Keep::A)).eigenvalues;
    CHECK(reduced(0) == doctest::Approx(0.5));
    CHECK(reduced(1) == doctest::Approx(0.5));
}

TEST_CASE("the AC|B reindexing matches a direct marginal computation") {
    const PureTripartite psi = random_state(2, 3, 2, 201);
    const CMatrix via_cut = partial_trace(cut(psi, Cut::AC_B), Keep::B);
    CMatrix direct = CMatrix::Zero(3, 3);
    for (Index ib = 0; ib < 3; ++ib)
        for (Index jb = 0; jb < 3; ++jb)
            for (Index ia = 0; ia < 2; ++ia)
                for (Index ic = 0; ic < 2; ++ic)
                    direct(ib, jb) += psi.amplitudes((ia * 3 + ib) * 2 + ic) *
                                      std::conj(psi.amplitudes((ia * 3 + jb) * 2 + ic));
    CHECK((via_cut - direct).norm() <= 1e-13);
}

TEST_CASE("every cut of a random state is a unit-trace rank-one density") {
    const PureTripartite psi = random_state(2, 2, 3, 202);
    for (Cut which : {Cut::A_BC, Cut::AB_C, Cut::AC_B}) {
        const BipartiteDensity rho = cut(psi, which);
        CHECK(std::abs(rho.mat.trace().real() - 1.0) <= 1e-12);
        const RVector spec = spectral_decompose(rho).eigenvalues;
        CHECK(spec(0) == doctest::Approx(1.0));
        CHECK(std::abs(spec(1)) <= 1e-10);
    }
}

TEST_CASE("a state is tripartite-equivalent to itself via the identity triple") {
    const PureTripartite psi = random_state(2, 2, 2, 203);
    const TripartiteVerdict v = decide_pure_tripartite(psi, psi);
    REQUIRE(v.is_equivalent());
    CHECK(v.equivalent().witness.verification_residual <= 1e-10);
}

TEST_CASE("constructed triples are recovered and verified") {
    int solved = 0;
    for (std::uint64_t seed : {211u, 212u, 213u, 214u, 215u}) {
        Rng rng(seed);
        const PureTripartite psi = random_state(2, 2, 2, seed * 7 + 1);
        const CMatrix ua = haar_unitary(2, rng);
        const CMatrix ub = haar_unitary(2, rng);
        const CMatrix uc = haar_unitary(2, rng);
        const PureTripartite psi_p = apply_triple(psi, ua, ub, uc);
        const TripartiteVerdict v = decide_pure_tripartite(psi, psi_p);
        CHECK_FALSE(v.is_not_equivalent());
        if (v.is_equivalent()) {
            ++solved;
            CHECK(v.equivalent().witness.verification_residual <= 1e-7);
        }
    }
    CHECK(solved >= 4);
}

TEST_CASE("differing reduced spectra are refused with a certificate") {
    CVector product = CVector::Zero(8);
    product(0) = 1.0;
    CVector ghz = CVector::Zero(8);
    ghz(0) = ghz(7) = 1.0 / std::numbers::sqrt2;
    const TripartiteVerdict v = decide_pure_tripartite(make_pure_tripartite(2, 2, 2, product),
                                                       make_pure_tripartite(2, 2, 2, ghz));
    REQUIRE(v.is_not_equivalent());
    CHECK(std::holds_alternative<ReducedSpectrumMismatch>(v.not_equivalent().certificate));
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(
        decide_pure_tripartite(random_state(2, 2, 2, 221), random_state(2, 2, 3, 222)),
        DimensionMismatch);
}

TEST_SUITE_END();
