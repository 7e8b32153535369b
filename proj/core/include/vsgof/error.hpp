#pragma once

#include <stdexcept>
#include <string>

namespace vsgof {

/// Base of every error raised by the library. Each subclass maps to one
/// stable CLI exit code (see tools/cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a special function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Distribution parameters inconsistent with the family.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Observations that cannot be used: non-finite values, too few points,
/// values outside the support of the null family.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Window size outside 1 <= m < n/2.
class WindowRangeError : public Error {
 public:
  using Error::Error;
};

/// A spacing X(i+m) - X(i-m) is zero, or no window in range has nonzero
/// spacings.
class TiesError : public Error {
 public:
  using Error::Error;
};

/// Every candidate window gives a Vasicek estimate above the empirical
/// maximal entropy of the null.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

/// Maximum-likelihood fit or Monte-Carlo estimation failed.
class EstimationError : public Error {
 public:
  using Error::Error;
};

/// Requested quantity not available for this family.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (datasets, scenario files). Carries a line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace vsgof
