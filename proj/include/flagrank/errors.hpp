#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flagrank {

enum class ErrorKind {
  DivisionByZero,
  UnknownVariable,
  PoleAtPoint,
  ChartMismatch,
  DependentForms,
  NotRank35,
  NotGrowth356,
  SymmetryViolated,
  NotParabolic,
  NotParabolicNonDeg,
  RankUnexpected,
  SampleBudgetExhausted,
  BadParameterSupport,
  LiftPreconditionFailed,
  DegenerateFrame,
  InconsistentChart,
  UnknownModel,
  SyntaxError,
  UnknownIdentifier,
  ArityError,
  TypeError,
  FrameDegenerateAtPoint,
  InvalidArgument,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// All library failures. `kind()` is the machine-readable code used in
/// JSON error objects and for CLI exit-code mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::string origin,
             std::size_t line, std::size_t column);

  const std::string& origin() const noexcept { return origin_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string origin_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

}  // namespace flagrank
