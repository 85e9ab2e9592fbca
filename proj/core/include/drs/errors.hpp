#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace drs {

// Base for every error the library raises; the CLI maps the subclasses
// onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (data table, trace, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Inconsistent or invalid option combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Invalid mathematical arguments (shapes, probabilities, supports).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A requested quantity cannot be computed from this capture table.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

// A closed-form estimator has no defined value for the supplied table.
class UndefinedEstimatorError : public DegenerateDataError {
 public:
  UndefinedEstimatorError(std::string estimator, const std::string& why)
      : DegenerateDataError(estimator + " is undefined for this table: " + why),
        estimator_(std::move(estimator)) {}
  const std::string& estimator() const { return estimator_; }

 private:
  std::string estimator_;
};

// A generating specification induces probabilities outside (0,1).
class InfeasibleSpecError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Truncation region carries no representable probability mass.
class NumericalUnderflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A chain exhausted its bounded retries on an infeasible draw.
class ChainFailureError : public Error {
 public:
  using Error::Error;
};

// Convergence statistics are undefined (e.g. constant chains).
class DegenerateDiagnosticError : public DegenerateDataError {
 public:
  using DegenerateDataError::DegenerateDataError;
};

}  // namespace drs
