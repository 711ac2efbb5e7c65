#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace multifol {

enum class ErrorCode {
  CycleError,
  PosetTooLarge,
  UnknownElement,
  DimensionMismatch,
  CoherenceError,
  NotEpimorphism,
  MissingMap,
  InvarianceFailure,
  PosetMismatch,
  NotSurjective,
  BadIndex,
  ShapeMismatch,
  SizeMismatch,
  NotComplete,
  NoGreatestElement,
  BasisIncomplete,
  AmbiguousMinimal,
  NotAssociative,
  NotCommutative,
  NotUnital,
  NotNilpotent,
  NotMultiplicative,
  ArityMismatch,
  CompatibilityViolation,
  SchemaError,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Domain error carrying a machine-readable code and a JSON witness
/// (the offending pair, square, triple, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json witness = nullptr)
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  nlohmann::json witness_;
};

}  // namespace multifol
