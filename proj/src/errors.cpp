#include "flagrank/errors.hpp"

namespace flagrank {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::ChartMismatch: return "ChartMismatch";
    case ErrorKind::DependentForms: return "DependentForms";
    case ErrorKind::NotRank35: return "NotRank35";
    case ErrorKind::NotGrowth356: return "NotGrowth356";
    case ErrorKind::SymmetryViolated: return "SymmetryViolated";
    case ErrorKind::NotParabolic: return "NotParabolic";
    case ErrorKind::NotParabolicNonDeg: return "NotParabolicNonDeg";
    case ErrorKind::RankUnexpected: return "RankUnexpected";
    case ErrorKind::SampleBudgetExhausted: return "SampleBudgetExhausted";
    case ErrorKind::BadParameterSupport: return "BadParameterSupport";
    case ErrorKind::LiftPreconditionFailed: return "LiftPreconditionFailed";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::InconsistentChart: return "InconsistentChart";
    case ErrorKind::UnknownModel: return "UnknownModel";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::FrameDegenerateAtPoint: return "FrameDegenerateAtPoint";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Internal";
}

ParseError::ParseError(ErrorKind kind, const std::string& message,
                       std::string origin, std::size_t line,
                       std::size_t column)
    : Error(kind, origin + ":" + std::to_string(line) + ":" +
                      std::to_string(column) + ": " + message),
      origin_(std::move(origin)),
      line_(line),
      column_(column),
      detail_(message) {}

}  // namespace flagrank
