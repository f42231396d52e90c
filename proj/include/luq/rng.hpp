#pragma once

#include <cstdint>

#include "luq/matrix.hpp"

namespace luq {

/// Small self-contained generator (splitmix64 core) so that streams are
/// reproducible independent of the standard library's distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [0, 2pi).
    double angle();
    /// Standard normal (Box-Muller).
    double normal();
    Complex normal_complex();

    /// Deterministic substream for the given index.
    Rng split(std::uint64_t index) const;

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// phase-of-R correction.
CMatrix haar_unitary(Index n, Rng& rng);

/// Uniform simplex point sorted descending, resampled until every consecutive
/// gap exceeds min_gap.
RVector simplex_spectrum(Index n, Rng& rng, double min_gap);

}  // namespace luq
