#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thetaforge {

enum class ErrorCode {
  UnknownFamily,
  ParameterOutOfRange,
  SizeOverflow,
  TooLarge,
  VertexOutOfRange,
  SyntaxError,
  DuplicateEdge,
  SelfLoop,
  NonFinite,
  DimensionMismatch,
  NotDiagonal,
  NegativeDiagonal,
  NotPsd,
  UnsupportedForm,
  SolverFailure,
  InfeasibleInput,
  PreconditionFailed,
  DegenerateLambda,
  NotVerified,
  SizeMismatch,
  InvalidInput,
  InfiniteBound,
  CertificateInvalid,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code; every fallible operation in
/// the library reports through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thetaforge
