#pragma once

#include <stdexcept>
#include <string>

namespace slmc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: unknown symbols, degree/weight
/// violations, mismatched algebras, parse errors.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or polynomial-degree cap was exceeded. Never raised for
/// mathematical reasons; raising the cap (SLMC_CAPS) may help.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold (e.g. twisting by a non-MC
/// element). Subclasses carry the offending witness.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace slmc
