// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace zenolab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter fails a precondition (nonpositive width, |gamma| >= 1, ...).
struct InvalidParameter : Error {
    using Error::Error;
};

// Requested quantity is an infinite integral (e.g. C for a slow-tail spectrum).
struct Divergent : Error {
    using Error::Error;
};

// Operation has no meaning for this variant (e.g. QZE scaling of a flat band).
struct Unsupported : Error {
    using Error::Error;
};

// G(omega_a) = 0 where a finite density is required.
struct ZeroDensity : Error {
    using Error::Error;
};

// Asymptotic formula evaluated outside its validity window.
struct OutOfRegime : Error {
    using Error::Error;
};

// Frequency outside the discrete-time Brillouin band.
struct OutOfBand : Error {
    using Error::Error;
};

// Time step too coarse for the requested solve.
struct StepTooCoarse : Error {
    using Error::Error;
};

struct QuadratureFailure : Error {
    QuadratureFailure(const std::string& what, double achieved)
        : Error(what), achieved_error(achieved) {}
    double achieved_error;
};

// Malformed run configuration (CLI / JSON layer).
struct ConfigError : Error {
    using Error::Error;
};

} // namespace zenolab
