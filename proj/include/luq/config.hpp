#pragma once

#include <cstdint>

namespace luq {

/// Tolerances for density-matrix validation. Hermiticity and trace checks are
/// relative; the PSD floor is scaled by ||m||_F at the call site.
struct Tolerances {
    double herm = 1e-10;      // relative Frobenius asymmetry
    double psd = 1e-9;        // min eigenvalue >= -psd * ||m||_F
    double trace = 1e-9;      // |tr - 1| after normalization
};

/// Knobs for the multistart phase search.
struct SearchConfig {
    int restarts = 32;
    int max_iters = 500;
    double rank_tol = 1e-7;   // f <= rank_tol counts as numerically rank one
    std::uint64_t seed = 0;
    // step policy
    double step_init = 1.0;
    double step_max = 4.0;
    double armijo = 1e-4;
    double backtrack = 0.5;
    int max_backtracks = 40;
    double grad_tol = 1e-10;  // stop when ||grad|| falls below
    double f_stop = 1e-12;    // early exit: good enough for witness extraction
};

/// Full configuration for decide(); one object, surfaced verbatim by the CLI.
struct DecideConfig {
    SearchConfig search{};
    Tolerances validation{};
    double spectra_tol = 1e-9;          // sorted-spectra comparison
    double reduced_spectra_tol = 1e-7;  // reduced-state precheck
    double gap_tol = 1e-8;              // degeneracy clustering (unit-trace spectra)
    double verify_tol = 1e-8;           // Frobenius residual for Equivalent
};

}  // namespace luq
