#include "foldmap/error.hpp"

namespace foldmap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::DegenerateHull: return "degenerate-hull";
    case ErrorKind::ConstructionFailed: return "construction-failed";
    case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::ObtusenessViolation: return "obtuseness-violation";
    case ErrorKind::OptimizationFailed: return "optimization-failed";
    case ErrorKind::PreconditionViolated: return "precondition-violated";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace foldmap
