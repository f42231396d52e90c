#pragma once

#include <stdexcept>
#include <string>

namespace luq {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct NotPositive : Error {
    explicit NotPositive(double min_eigenvalue, const std::string& what)
        : Error(what), min_eigenvalue(min_eigenvalue) {}
    double min_eigenvalue;
};

struct ZeroTrace : Error {
    using Error::Error;
};

struct EigSolverFailure : Error {
    using Error::Error;
};

struct LengthMismatch : Error {
    using Error::Error;
};

struct NotUnitary : Error {
    using Error::Error;
};

struct SvdFailure : Error {
    using Error::Error;
};

struct RankDeficient : Error {
    using Error::Error;
};

struct DegenerateSingularValue : Error {
    using Error::Error;
};

struct NonPositiveParameter : Error {
    using Error::Error;
};

struct InvalidState : Error {
    using Error::Error;
};

}  // namespace luq
