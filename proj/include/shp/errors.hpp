#pragma once

#include <stdexcept>
#include <string>

namespace shp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-unit n, off-shell p, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two one-particle states were combined at different points of the orbit
/// (different n) or at different invariant times tau.
class FiberMismatch : public Error {
public:
    using Error::Error;
};

/// Antisymmetrizing a state with itself produced the zero vector.
class PauliExclusion : public Error {
public:
    using Error::Error;
};

/// A scan grid is too coarse to resolve the expected fringe period.
class AliasingError : public Error {
public:
    using Error::Error;
};

/// An integrator step changed the Hamiltonian by more than the allowed drift.
class StepRejected : public Error {
public:
    StepRejected(const std::string& what, double tau) : Error(what), tau_(tau) {}
    double tau() const noexcept { return tau_; }

private:
    double tau_;
};

}  // namespace shp
