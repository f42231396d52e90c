#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <variant>

#include "luq/config.hpp"
#include "luq/density.hpp"
#include "luq/realign.hpp"
#include "luq/spectral.hpp"

namespace luq {

enum class Subsystem { A, B, C };  // C appears only in tripartite verdicts

/// Sorted spectra differ at `index`.
struct SpectrumMismatch {
    Index index = 0;
    double lambda = 0.0;
    double lambda_prime = 0.0;
};

/// Sorted spectra of the cited reduced states differ at `index`.
struct ReducedSpectrumMismatch {
    Subsystem subsystem = Subsystem::A;
    Index index = 0;
    double value = 0.0;
    double value_prime = 0.0;
};

/// Entry (row, col) of the realigned coset is zero for every phase choice
/// while its row and column each host an always-nonzero entry.
struct StructuralInfeasibility {
    Index row = 0;
    Index col = 0;
};

using Certificate = std::variant<SpectrumMismatch, ReducedSpectrumMismatch, StructuralInfeasibility>;

enum class InconclusiveReason { Degenerate, SearchExhausted };

struct EquivalentOutcome {
    FactorPair witness;  // rho' = (u1 kron u2) rho (u1 kron u2)^dag
    double verification_residual = 0.0;
};

struct NotEquivalentOutcome {
    Certificate certificate;
};

struct InconclusiveOutcome {
    InconclusiveReason reason = InconclusiveReason::SearchExhausted;
    double best_f = std::numeric_limits<double>::quiet_NaN();
};

struct Verdict {
    std::variant<EquivalentOutcome, NotEquivalentOutcome, InconclusiveOutcome> outcome;
    /// Search diagnostics; NaN / 0 when the pipeline stopped before searching.
    double f_best = std::numeric_limits<double>::quiet_NaN();
    long evaluations = 0;

    bool is_equivalent() const { return std::holds_alternative<EquivalentOutcome>(outcome); }
    bool is_not_equivalent() const { return std::holds_alternative<NotEquivalentOutcome>(outcome); }
    bool is_inconclusive() const { return std::holds_alternative<InconclusiveOutcome>(outcome); }

    const EquivalentOutcome& equivalent() const { return std::get<EquivalentOutcome>(outcome); }
    const NotEquivalentOutcome& not_equivalent() const { return std::get<NotEquivalentOutcome>(outcome); }
    const InconclusiveOutcome& inconclusive() const { return std::get<InconclusiveOutcome>(outcome); }
};

/// End-to-end decision procedure. Certificates are exact-math refutations;
/// a failed search alone never yields NotEquivalent.
Verdict decide(const BipartiteDensity& rho, const BipartiteDensity& rho_prime,
               const DecideConfig& cfg = {}, TieBreak tie = TieBreak::LexAscending);

/// ||rho' - (u1 kron u2) rho (u1 kron u2)^dag||_F on the normalized matrices.
double verify_witness(const BipartiteDensity& rho, const BipartiteDensity& rho_prime,
                      const FactorPair& pair);

enum class SpectrumPolicy { NonDegenerate, Unrestricted };

struct LuPair {
    BipartiteDensity rho;
    BipartiteDensity rho_prime;
    CMatrix u1;  // M x M
    CMatrix u2;  // N x N
};

/// Deterministic per seed: random density (uniform simplex spectrum, Haar
/// basis) conjugated by Haar-random local unitaries.
LuPair gen_lu_pair(Index dim_a, Index dim_b, std::uint64_t seed,
                   SpectrumPolicy policy = SpectrumPolicy::NonDegenerate);

/// The 2x4 corner-plus-diagonal family, trace-normalized. `nondegenerate`
/// records whether the normalized spectrum has all gaps above gap_tol.
struct EdgeState {
    BipartiteDensity density;
    RVector spectrum;  // normalized, descending
    bool nondegenerate = false;
};

EdgeState edge_state(double a, double b, double c, double gap_tol = 1e-8);

}  // namespace luq
