#pragma once

#include "luq/density.hpp"
#include "luq/verdict.hpp"

namespace luq {

/// Normalized pure state on C^dA (x) C^dB (x) C^dC with amplitude index
/// ((i_A * dB) + i_B) * dC + i_C.
struct PureTripartite {
    Index dim_a = 0;
    Index dim_b = 0;
    Index dim_c = 0;
    CVector amplitudes;

    Index dim() const { return dim_a * dim_b * dim_c; }
};

/// Validates and normalizes; throws InvalidState on a zero or non-finite
/// vector or a length mismatch.
PureTripartite make_pure_tripartite(Index dim_a, Index dim_b, Index dim_c,
                                    const CVector& amplitudes);

enum class Cut { A_BC, AB_C, AC_B };

/// Rank-one density |psi><psi| across the chosen bipartition. For AC|B the
/// amplitudes are reindexed to ((i_A * dC) + i_C) * dB + i_B first.
BipartiteDensity cut(const PureTripartite& psi, Cut which);

struct TripleWitness {
    CMatrix ua;
    CMatrix ub;
    CMatrix uc;
    double verification_residual = 0.0;  // on the full tripartite density
};

struct TriEquivalent {
    TripleWitness witness;
};

struct TriNotEquivalent {
    Certificate certificate;
};

struct TriInconclusive {
    InconclusiveReason reason = InconclusiveReason::SearchExhausted;
    double best_residual = std::numeric_limits<double>::quiet_NaN();
};

struct TripartiteVerdict {
    std::variant<TriEquivalent, TriNotEquivalent, TriInconclusive> outcome;

    bool is_equivalent() const { return std::holds_alternative<TriEquivalent>(outcome); }
    bool is_not_equivalent() const { return std::holds_alternative<TriNotEquivalent>(outcome); }
    bool is_inconclusive() const { return std::holds_alternative<TriInconclusive>(outcome); }

    const TriEquivalent& equivalent() const { return std::get<TriEquivalent>(outcome); }
    const TriNotEquivalent& not_equivalent() const { return std::get<TriNotEquivalent>(outcome); }
    const TriInconclusive& inconclusive() const { return std::get<TriInconclusive>(outcome); }
};

/// Pure-state analogue of decide(): reduced-spectrum refutations are
/// authoritative, witnesses are assembled from the bipartite engine and
/// eigenbasis alignment, and Equivalent is only emitted after the full
/// tripartite density verifies within tri_verify_tol.
TripartiteVerdict decide_pure_tripartite(const PureTripartite& psi, const PureTripartite& psi_prime,
                                         const DecideConfig& cfg = {},
                                         double tri_verify_tol = 1e-7);

}  // namespace luq
