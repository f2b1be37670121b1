#pragma once

#include <stdexcept>
#include <string>

namespace qneg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke an operation's precondition (wrong domain tag, bad schedule).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its mathematical domain (s > 1, |r| outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The sampling window cannot represent the function: boundary guard tripped,
// non-finite samples, or a grid larger than the configured cap.
class GuardError : public Error {
 public:
  using Error::Error;
};

// A numerical diagnostic (imaginary residue, normalization) is out of tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qneg
