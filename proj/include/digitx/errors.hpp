#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace digitx {

// Base class of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad (p, e, r, ...) parameters or malformed input records.
struct InvalidParams : Error {
    using Error::Error;
};

// Two values from different residue rings were mixed in one operation.
struct ContextMismatch : Error {
    using Error::Error;
};

// Inversion was requested for an element divisible by p.
struct NonUnit : Error {
    using Error::Error;
};

// Polynomial division requires a monic divisor (leading coefficient exactly 1).
struct NotMonic : Error {
    using Error::Error;
};

// An enumeration or table-size guard was hit before the computation started.
struct GuardExceeded : Error {
    using Error::Error;
};

// A construction failed its own exhaustive defining-property check.
// This always indicates a bug, never a property of the inputs.
struct SelfCheckError : Error {
    using Error::Error;
};

// An internally assembled result failed its exhaustive re-verification.
struct VerificationFailure : Error {
    using Error::Error;
};

// The oracle's measured minimal degree exceeds the caller-supplied cap.
struct CapExceeded : Error {
    std::uint64_t minimal_degree;
    CapExceeded(std::uint64_t degree, const std::string& msg)
        : Error(msg), minimal_degree(degree) {}
};

} // namespace digitx
