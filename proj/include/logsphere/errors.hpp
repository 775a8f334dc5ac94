#pragma once

#include <stdexcept>
#include <string>

namespace logsphere {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two points closer than the coincidence tolerance (1e-14) in an energy sum.
class CoincidentPoints : public Error {
public:
    using Error::Error;
};

/// Inverse stereographic projection requested at (or within 1e-12 of) the
/// north pole, which has no planar preimage.
class NorthPoleNotRepresentable : public Error {
public:
    using Error::Error;
};

/// Moebius map evaluated at its pole -d/c.
class PoleOfMap : public Error {
public:
    using Error::Error;
};

/// Potential evaluated where it is not finite.
class PoleOfPotential : public Error {
public:
    using Error::Error;
};

/// Operation requires the canonical potential / equilibrium data.
class UnsupportedPotential : public Error {
public:
    using Error::Error;
};

/// Line search underflowed the step size on every restart.
class NoProgress : public Error {
public:
    using Error::Error;
};

/// Lattice basis vectors are (numerically) linearly dependent.
class DegenerateBasis : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of a special function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Not enough data points for a fit.
class InsufficientData : public Error {
public:
    using Error::Error;
};

} // namespace logsphere
