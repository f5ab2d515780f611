#include "sidlab/error.hpp"

namespace sidlab {

const char *to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidGraph:
    return "invalid-graph";
  case ErrorCode::MultiEdge:
    return "multi-edge";
  case ErrorCode::Parity:
    return "parity";
  case ErrorCode::MissingSwapAutomorphism:
    return "missing-swap-automorphism";
  case ErrorCode::SpecMismatch:
    return "spec-mismatch";
  case ErrorCode::NotIndependent:
    return "not-independent";
  case ErrorCode::RootInIndependentSet:
    return "root-in-independent-set";
  case ErrorCode::ShapeMismatch:
    return "shape-mismatch";
  case ErrorCode::OutOfRange:
    return "out-of-range";
  case ErrorCode::PinCollision:
    return "pin-collision";
  case ErrorCode::ArityOverflow:
    return "arity-overflow";
  case ErrorCode::InfeasibleDegree:
    return "infeasible-degree";
  case ErrorCode::ProjectionNonconvergence:
    return "projection-nonconvergence";
  case ErrorCode::Parse:
    return "parse";
  }
  return "unknown";
}

} // namespace sidlab
