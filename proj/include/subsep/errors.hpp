#pragma once

#include <stdexcept>
#include <string>

namespace subsep {

// Base of everything the library throws. The CLI maps subclasses onto
// exit codes: InputError family -> 1, SolverError family -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class UnsupportedRank : public InputError {
 public:
  explicit UnsupportedRank(int rank)
      : InputError("unsupported rank " + std::to_string(rank) + " (at most 3 is handled)"),
        rank_(rank) {}
  int rank() const { return rank_; }

 private:
  int rank_;
};

class SupportMismatch : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionUnmet : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateCoefficients : public InputError {
 public:
  using InputError::InputError;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

// Random line probes disagree on whether a curve component exists, or the
// algebraic and geometric views of the same subspace do not match.
class InconsistentProbes : public SolverError {
 public:
  using SolverError::SolverError;
};

class InconsistentPattern : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace subsep
