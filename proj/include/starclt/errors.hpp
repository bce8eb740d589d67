#pragma once

#include <stdexcept>
#include <string>

namespace starclt {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad size, zero index, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// orbit_count was asked about a set that the permutation does not map onto itself.
class NotInvariantError : public Error {
 public:
  using Error::Error;
};

// Two set partitions over different ground sets were compared.
class GroundSetMismatch : public Error {
 public:
  using Error::Error;
};

// An enumeration or expansion would exceed its configured work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A limit-moment computation was requested for a non-centered partition function.
class NotCenteredError : public Error {
 public:
  using Error::Error;
};

// A density was requested for d = 1, where the law is the point mass at 0.
class DiracMassError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A text representation could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace starclt
