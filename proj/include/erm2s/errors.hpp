#pragma once

#include <stdexcept>
#include <string>

namespace erm2s {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BadKnots : public Error {
 public:
  using Error::Error;
};

class NegativeValue : public Error {
 public:
  using Error::Error;
};

// Raised when a discrete-concavity check fails; `index` is the first interior
// knot whose triple violates the cross-product test.
class ConcavityViolation : public Error {
 public:
  ConcavityViolation(const std::string& what, int index)
      : Error(what), index(index) {}
  int index;
};

class ZeroCurve : public Error {
 public:
  using Error::Error;
};

class BadIndex : public Error {
 public:
  using Error::Error;
};

class BadGauge : public Error {
 public:
  using Error::Error;
};

// Raised by extract_curve when the assignment violates a model constraint by
// more than the feasibility tolerance; carries the worst offender.
class InfeasibleAssignment : public Error {
 public:
  InfeasibleAssignment(const std::string& what, std::string constraint,
                       double violation)
      : Error(what), constraint(std::move(constraint)), violation(violation) {}
  std::string constraint;
  double violation = 0.0;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class NoBound : public Error {
 public:
  using Error::Error;
};

}  // namespace erm2s
