#pragma once

#include <optional>
#include <string>
#include <utility>

#include "luq/matrix.hpp"
#include "luq/verdict.hpp"

namespace luq {

/// On-disk matrix document: {"rows", "cols", "data": [[re, im], ...]} with
/// row-major data and an optional "dims": [M, N]. Numbers must be finite.
struct MatrixFile {
    CMatrix mat;
    std::optional<std::pair<Index, Index>> dims;
};

/// Throws luq::Error with a message naming the offending field.
MatrixFile load_matrix(const std::string& path);

/// Atomic write (temp file + rename). Doubles serialize to full precision so
/// a parse/serialize round trip is value-identical.
void save_matrix(const std::string& path, const CMatrix& m,
                 std::optional<std::pair<Index, Index>> dims = std::nullopt);

std::string verdict_class_name(const Verdict& v);

struct ReportInputs {
    Verdict verdict;
    Index dim_a = 0;
    Index dim_b = 0;
    DecideConfig cfg;
    double elapsed_ms = 0.0;
};

/// Machine-readable record of a check run; carries the witness matrices so
/// an Equivalent verdict can be re-verified offline.
void save_report(const std::string& path, const ReportInputs& inputs);

}  // namespace luq
