#pragma once

#include <stdexcept>
#include <string>

namespace sturm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter violates a documented precondition (a <= 0, even grid size, ...).
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Input that carries no information (an all-zero wavefunction, for example).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

/// Ordering or compatibility precondition between two arguments failed.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Two eigenpairs were sampled on different grids.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// The energy search window could not be widened to straddle the target node count.
class BracketNotFound : public Error {
public:
    BracketNotFound(const std::string& what, double lo, double hi)
        : Error(what), window_lo(lo), window_hi(hi) {}
    double window_lo;
    double window_hi;
};

class NonConvergence : public Error {
public:
    NonConvergence(const std::string& what, int iters) : Error(what), iterations(iters) {}
    int iterations;
};

}  // namespace sturm
