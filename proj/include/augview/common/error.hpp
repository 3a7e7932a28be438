#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace augview {

enum class ErrorCode {
  kRaggedRow,
  kEmptyInput,
  kDuplicateColumn,
  kUnknownColumn,
  kNonNumericDimension,
  kNonCategoricalKey,
  kInvalidBinding,
  kOutsideView,
  kNonAdjacentRect,
  kBadParams,
  kUnknownUser,
  kUserExists,
  kUnknownVis,
  kUnknownStroke,
  kStaleEvent,
  kMalformedEvent,
  kEmptyEmbedData,
  kDegenerateLink,
  kNonNumericAxis,
  kEmptyStack,
  kUnknownLens,
  kFrameTooLarge,
  kIncompleteFrame,
  kMalformedJson,
  kUnknownKind,
  kConfigError,
  kScenarioParseError,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this type; `code()` is what callers branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace augview
