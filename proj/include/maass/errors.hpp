#pragma once

#include <stdexcept>
#include <string>

namespace maass {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Series inversion with a leading coefficient that is not a unit.
class NonUnitLeadingTerm : public Error {
 public:
  using Error::Error;
};

/// Addition of exact scalars carrying different powers of pi.
class MixedPiPower : public Error {
 public:
  using Error::Error;
};

/// Two exact series differ; `order()` is the first differing q-exponent
/// expressed as numerator over `den()`.
class MismatchAtOrder : public Error {
 public:
  MismatchAtOrder(long num, long den, const std::string& what)
      : Error(what), num_(num), den_(den) {}
  long num() const { return num_; }
  long den() const { return den_; }

 private:
  long num_;
  long den_;
};

class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

class PrecisionUnreachable : public Error {
 public:
  using Error::Error;
};

class PoleOnLattice : public Error {
 public:
  using Error::Error;
};

class PoleTooClose : public Error {
 public:
  using Error::Error;
};

class StepUnderflow : public Error {
 public:
  using Error::Error;
};

class InconsistentMultiplier : public Error {
 public:
  using Error::Error;
};

class SuiteFailed : public Error {
 public:
  SuiteFailed(double max_residual, std::string witness, const std::string& what)
      : Error(what), max_residual_(max_residual), witness_(std::move(witness)) {}
  double max_residual() const { return max_residual_; }
  const std::string& witness() const { return witness_; }

 private:
  double max_residual_;
  std::string witness_;
};

}  // namespace maass
