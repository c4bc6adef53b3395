#pragma once

#include <stdexcept>
#include <string>

namespace ris {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

struct NonConvergence : Error {
    using Error::Error;
};

struct DegenerateGeometry : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

struct InvalidResistance : Error {
    using Error::Error;
};

struct ResonantPhase : Error {
    using Error::Error;
};

struct ProblemTooLarge : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace ris
