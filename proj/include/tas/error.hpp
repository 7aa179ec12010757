#pragma once

#include <stdexcept>

namespace tas {

// Common base so callers can catch toolkit failures as one family.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested (family, degree, cell kind, dimension) combination is not implemented.
struct CapabilityError : Error {
  using Error::Error;
};

// A quantity left the domain of a digit map (error outside (0,1), dof count <= 1, ...).
struct OutOfDomainError : Error {
  using Error::Error;
};

// The SPD assumption failed during conjugate gradients (p^T A p <= 0).
struct NotSpdError : Error {
  using Error::Error;
};

// Malformed record file content (bad header, schema mismatch, unreadable stream).
struct FormatError : Error {
  using Error::Error;
};

// A request that is syntactically well formed but semantically unusable
// (unknown case id, empty plan, invalid model constants).
struct InvalidInputError : Error {
  using Error::Error;
};

}  // namespace tas
