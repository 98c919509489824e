#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unruh {

enum class ErrorCode {
  InvalidArgument,
  SeparationNonpositive,
  InvalidState,
  NotXForm,
  DegenerateNullspace,
  FormulaSingular,
  NonConvergence,
  HorizonTooShort,
  Usage,
  ConflictingFlags,
  Io,
};

// Stable machine-readable name, e.g. "separation-nonpositive".
std::string_view code_name(ErrorCode code);

// Process exit status used by the command-line front end.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace unruh
