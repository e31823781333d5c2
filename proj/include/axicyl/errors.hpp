#pragma once

#include <stdexcept>
#include <string>

namespace axicyl {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or operation parameters. CLI exit code 2.
class ConfigError : public Error {
public:
  using Error::Error;
};

// A caller broke an operation's precondition (parity, boundary values, time order).
class ContractError : public Error {
public:
  using Error::Error;
};

// Non-finite sample encountered while evaluating a functional.
class EvaluationError : public Error {
public:
  using Error::Error;
};

// Iterative solve failed or the time integrator produced NaN. CLI exit code 3.
class SolverError : public Error {
public:
  SolverError(const std::string& what, double residual = 0.0)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

// Malformed checkpoint, CSV or report file. CLI exit code 4.
class FormatError : public Error {
public:
  using Error::Error;
};

int exit_code_for(const std::exception& e);

}  // namespace axicyl
