#pragma once

#include <stdexcept>
#include <string>

namespace gpi {

// Base of every library error. Subclasses map onto CLI exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments or malformed input objects.
struct InvalidInput : Error {
  using Error::Error;
};

// A configured search or enumeration cap was hit.
struct BudgetExceeded : Error {
  using Error::Error;
};

// An internally produced object failed its own postcondition check.
struct VerificationFailure : Error {
  using Error::Error;
};

// A randomized step ran out of retries without a certified answer.
struct Undecided : Error {
  using Error::Error;
};

}  // namespace gpi
