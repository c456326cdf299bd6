#pragma once

#include <stdexcept>
#include <string>

namespace geophase {

// Base of every error raised by the library. Callers that only care about
// "something about the input was wrong" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or labels that do not line up (non-square matrix, grid mismatch,
// incomplete basis, zero steps).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// NaN or infinity where a finite number is required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A precondition on the value itself failed (non-Hermitian Hamiltonian,
// non-unitary propagator, unnormalized state).
class ContractError : public Error {
 public:
  using Error::Error;
};

// arg of a (numerically) vanishing complex number was requested.
class UndefinedPhaseError : public Error {
 public:
  using Error::Error;
};

// Instantaneous spectrum closed its gap.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// A state became orthogonal to its initial value, so the phase that fixes
// the basis frame is undefined.
class OrthogonalityCrossingError : public Error {
 public:
  using Error::Error;
};

// Weights do not sum to one.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Ancilla too small to hold a purification.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace geophase
