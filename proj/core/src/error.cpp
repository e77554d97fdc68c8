#include "thetaforge/error.hpp"

namespace thetaforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::SizeOverflow: return "SizeOverflow";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDiagonal: return "NotDiagonal";
    case ErrorCode::NegativeDiagonal: return "NegativeDiagonal";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::UnsupportedForm: return "UnsupportedForm";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::InfeasibleInput: return "InfeasibleInput";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::DegenerateLambda: return "DegenerateLambda";
    case ErrorCode::NotVerified: return "NotVerified";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InfiniteBound: return "InfiniteBound";
    case ErrorCode::CertificateInvalid: return "CertificateInvalid";
  }
  return "Unknown";
}

}  // namespace thetaforge
