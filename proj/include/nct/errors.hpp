#pragma once

#include <stdexcept>
#include <string>

namespace nct {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input shape does not match the working signal length / grid dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// Invalid construction parameter (non-divisible lattice step, sigma <= 0, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Two algebra elements with different deformation parameters, or a sequence
// whose theta has no finite matrix model for the given lattice.
struct ThetaMismatchError : Error {
    using Error::Error;
};

struct NotAFrameError : Error {
    using Error::Error;
};

struct NotInvertibleError : Error {
    NotInvertibleError(const std::string& msg, double min_sv)
        : Error(msg), min_singular_value(min_sv) {}
    double min_singular_value;
};

struct ContourError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

// Twisted-product support grew past the configured cap.
struct ResourceError : Error {
    using Error::Error;
};

}  // namespace nct
