#pragma once

#include <stdexcept>
#include <string>

namespace acv {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid distribution or run parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Requested allocation exceeds the configured budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Truncation threshold so small the truncated law has (almost) no variance.
class DegenerateTruncationError : public Error {
 public:
  using Error::Error;
};

/// Violated precondition on an input matrix.
class ContractError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A matrix declared PSD produced a clearly negative eigenvalue.
class NumericalDegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Enumeration requested beyond its work budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant broken (e.g. an exact division that was not exact).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace acv
