#pragma once

#include <stdexcept>
#include <string>

namespace sidlab {

enum class ErrorCode {
  InvalidGraph,
  MultiEdge,
  Parity,
  MissingSwapAutomorphism,
  SpecMismatch,
  NotIndependent,
  RootInIndependentSet,
  ShapeMismatch,
  OutOfRange,
  PinCollision,
  ArityOverflow,
  InfeasibleDegree,
  ProjectionNonconvergence,
  Parse,
};

const char *to_string(ErrorCode code);

// Every library failure carries a machine-checkable code.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace sidlab
