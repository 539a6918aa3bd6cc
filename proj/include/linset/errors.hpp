#pragma once

#include <stdexcept>
#include <string>

namespace linset {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrime : Error {
    using Error::Error;
};
struct ReduciblePolynomial : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct CtxMismatch : Error {
    using Error::Error;
};
struct MixedAmbient : Error {
    using Error::Error;
};
struct ZeroScalar : Error {
    using Error::Error;
};
struct BadParams : Error {
    using Error::Error;
};
struct BadIntersection : Error {
    using Error::Error;
};
struct NotSubfieldLinear : Error {
    using Error::Error;
};
struct NotScattered : Error {
    using Error::Error;
};
struct NotAGenerator : Error {
    using Error::Error;
};
struct InseparableDefect : Error {
    using Error::Error;
};
struct MuInBaseField : Error {
    using Error::Error;
};
struct DimOrder : Error {
    using Error::Error;
};
struct DimMismatch : Error {
    using Error::Error;
};
struct BadDims : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

// Raised when a computation contradicts a statement that is a theorem for
// the given inputs. Never expected on valid runs; mapped to exit code 4 by
// the CLI.
struct InternalContradiction : Error {
    using Error::Error;
};

} // namespace linset
