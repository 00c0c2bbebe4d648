#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace invdom {

enum class ErrorKind {
  ConvexityViolation,
  DegenerateGaussMap,
  SingularPotential,
  NonpositiveData,
  OriginInsideDomain,
  GridTooCoarse,
  ConvergenceFailure,
  ZeroFunction,
  DataDirectionMismatch,
  NoDescent,
  NonConvexSupport,
  NonMonotoneNormals,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Library error carrying a machine-checkable kind. Every failure path in the
/// library throws this type (or std::invalid_argument for plain API misuse).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace invdom
