#pragma once

#include <stdexcept>
#include <string>

namespace gravdg {

/// A state or argument outside the admissible set (rho <= 0, p <= 0, no root, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid user-facing configuration (bad k, empty mesh, unknown key, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file; carries the offending line number (1-based, 0 if unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Failure while evaluating the discrete operator or a stage update.
/// Location fields are -1 when unknown; the stepper fills in step and stage.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& msg, int cell = -1, int node = -1)
      : std::runtime_error(msg), cell(cell), node(node) {}

  int cell;
  int node;
  int step = -1;
  int stage = -1;
};

}  // namespace gravdg
