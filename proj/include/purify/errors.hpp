#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace purify {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A vector's norm underflowed (below 1e-300), e.g. an iterate was annihilated
/// by a shift equal to its dominant eigenvalue.
struct ZeroVectorError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

/// An eigenvalue failed to deflate (QL) or the rotation sweep budget ran out (Jacobi).
struct NoConvergenceError : Error {
    NoConvergenceError(const std::string& what, std::size_t idx) : Error(what), index(idx) {}
    std::size_t index;
};

struct BadTargetError : Error {
    using Error::Error;
};

struct AllDegenerateError : Error {
    using Error::Error;
};

struct DegenerateGapError : Error {
    using Error::Error;
};

struct NonOrthonormalBasisError : Error {
    using Error::Error;
};

struct DegenerateOffsetError : Error {
    using Error::Error;
};

struct EmptySectorError : Error {
    using Error::Error;
};

struct RankDeficientError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace purify
