#include "multifol/error.hpp"

namespace multifol {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CycleError: return "CycleError";
    case ErrorCode::PosetTooLarge: return "PosetTooLarge";
    case ErrorCode::UnknownElement: return "UnknownElement";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CoherenceError: return "CoherenceError";
    case ErrorCode::NotEpimorphism: return "NotEpimorphism";
    case ErrorCode::MissingMap: return "MissingMap";
    case ErrorCode::InvarianceFailure: return "InvarianceFailure";
    case ErrorCode::PosetMismatch: return "PosetMismatch";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::NoGreatestElement: return "NoGreatestElement";
    case ErrorCode::BasisIncomplete: return "BasisIncomplete";
    case ErrorCode::AmbiguousMinimal: return "AmbiguousMinimal";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotMultiplicative: return "NotMultiplicative";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace multifol
