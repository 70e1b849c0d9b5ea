#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Base of everything the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the mathematical input failed (non-unit where a unit is
// required, composite "prime", unsupported weight, mismatched moduli, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A size/capacity guard tripped (range too large, modulus too large for an
// exhaustive enumeration, ...).
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace hecke
