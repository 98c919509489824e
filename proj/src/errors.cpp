#include "unruh_pair/errors.hpp"

namespace unruh {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::SeparationNonpositive: return "separation-nonpositive";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::NotXForm: return "not-x-form";
    case ErrorCode::DegenerateNullspace: return "degenerate-nullspace";
    case ErrorCode::FormulaSingular: return "formula-singular";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::HorizonTooShort: return "horizon-too-short";
    case ErrorCode::Usage: return "usage";
    case ErrorCode::ConflictingFlags: return "conflicting-flags";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
      return 1;
    case ErrorCode::Usage:
    case ErrorCode::ConflictingFlags:
      return 2;
    case ErrorCode::NonConvergence:
    case ErrorCode::HorizonTooShort:
    case ErrorCode::DegenerateNullspace:
    case ErrorCode::FormulaSingular:
      return 3;
    case ErrorCode::InvalidArgument:
    case ErrorCode::SeparationNonpositive:
    case ErrorCode::InvalidState:
    case ErrorCode::NotXForm:
      return 4;
  }
  return 1;
}

}  // namespace unruh
