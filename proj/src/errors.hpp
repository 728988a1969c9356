#pragma once

#include <stdexcept>
#include <string>

namespace erhoq {

// Error taxonomy shared by the library and the C API; each subclass maps to
// one erhoq_status code and one CLI exit code.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidArgument : Error {
    using Error::Error;
};

// Total absolute psip weight crossed the configured ceiling: delta_beta is too
// large or beta too deep for the initial population.
struct PopulationExplosion : Error {
    using Error::Error;
};

// Sum of diagonal weights is zero; expectation values are undefined.
struct ZeroTrace : Error {
    using Error::Error;
};

// u/v preparation requested for a diagonal pair, or vice versa.
struct BranchMismatch : Error {
    using Error::Error;
};

// Requested evolution time is not a whole number of trotter steps.
struct NonDivisibleTime : Error {
    using Error::Error;
};

// Dense oracle work is capped at 12 sites.
struct DimensionTooLarge : Error {
    using Error::Error;
};

struct DivisionByZeroAtT0 : Error {
    using Error::Error;
};

// Malformed input file; `line` is 1-based.
struct ParseError : Error {
    ParseError(const std::string& what, int line_number)
        : Error(what), line(line_number) {}
    int line = 0;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace erhoq
