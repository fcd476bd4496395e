#pragma once

#include <stdexcept>
#include <string>

namespace wplab {

// Base of all library errors. The C API maps each subclass to a status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad shapes, dimension mismatches, parse failures.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Space configuration problems, e.g. a kernel coefficient that was never supplied.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An iterative solver ran out of budget. Subclasses carry the best iterate.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// The linear constraint sum f_i g_i = h has no solution at the requested degree/rank.
class Infeasible : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

// Lower bound exceeded upper bound: always an implementation bug.
class BracketInversion : public Error {
 public:
  using Error::Error;
};

}  // namespace wplab
