#pragma once

#include <stdexcept>
#include <cstddef>
#include <string>

namespace wittenlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Adjacent phase samples differ by at least pi/2; the nu-grid must be refined
/// on [nu_lo, nu_hi].
class RefinementNeeded : public Error {
public:
    RefinementNeeded(double nu_lo, double nu_hi, double jump);

    double nu_lo() const noexcept { return nu_lo_; }
    double nu_hi() const noexcept { return nu_hi_; }
    double jump() const noexcept { return jump_; }

private:
    double nu_lo_;
    double nu_hi_;
    double jump_;
};

/// |det2| fell below the near-singular threshold at nu.
class NearSingular : public Error {
public:
    NearSingular(double nu, double modulus);

    double nu() const noexcept { return nu_; }
    double modulus() const noexcept { return modulus_; }

private:
    double nu_;
    double modulus_;
};

/// The unwrapped phase does not return to the principal branch at an endpoint.
class WindingError : public Error {
public:
    using Error::Error;
};

/// A curve or grid does not cover the range an operation needs.
class CoverageError : public Error {
public:
    using Error::Error;
};

/// Discretization too coarse for the requested spectral range.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Non-finite value produced while assembling a matrix; carries the entry.
class AssemblyError : public Error {
public:
    AssemblyError(std::size_t row, std::size_t col);

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

class LinearAlgebraError : public Error {
public:
    using Error::Error;
};

}  // namespace wittenlab
