#pragma once

#include <stdexcept>
#include <string>

namespace aea {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain configuration input.
struct ConfigError : Error {
    using Error::Error;
};

/// No positive anti-eavesdropping ability exists for the requested scenario
/// (power budget times on-off threshold does not exceed the secrecy floor).
struct InfeasibleError : Error {
    using Error::Error;
};

struct ZeroChannelError : Error {
    using Error::Error;
};

struct InvalidPhiError : Error {
    using Error::Error;
};

struct NegativeInputError : Error {
    using Error::Error;
};

struct ToleranceError : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    using Error::Error;
};

struct SimulationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace aea
