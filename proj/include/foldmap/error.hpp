#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace foldmap {

enum class ErrorKind {
  InvalidInput,
  DegenerateHull,
  ConstructionFailed,
  UnsupportedDimension,
  ObtusenessViolation,
  OptimizationFailed,
  PreconditionViolated,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so the
/// command-line front end can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace foldmap
