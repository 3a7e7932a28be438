#include "augview/common/error.hpp"

namespace augview {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRaggedRow: return "RaggedRow";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDuplicateColumn: return "DuplicateColumn";
    case ErrorCode::kUnknownColumn: return "UnknownColumn";
    case ErrorCode::kNonNumericDimension: return "NonNumericDimension";
    case ErrorCode::kNonCategoricalKey: return "NonCategoricalKey";
    case ErrorCode::kInvalidBinding: return "InvalidBinding";
    case ErrorCode::kOutsideView: return "OutsideView";
    case ErrorCode::kNonAdjacentRect: return "NonAdjacentRect";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kUnknownUser: return "UnknownUser";
    case ErrorCode::kUserExists: return "UserExists";
    case ErrorCode::kUnknownVis: return "UnknownVis";
    case ErrorCode::kUnknownStroke: return "UnknownStroke";
    case ErrorCode::kStaleEvent: return "StaleEvent";
    case ErrorCode::kMalformedEvent: return "MalformedEvent";
    case ErrorCode::kEmptyEmbedData: return "EmptyEmbedData";
    case ErrorCode::kDegenerateLink: return "DegenerateLink";
    case ErrorCode::kNonNumericAxis: return "NonNumericAxis";
    case ErrorCode::kEmptyStack: return "EmptyStack";
    case ErrorCode::kUnknownLens: return "UnknownLens";
    case ErrorCode::kFrameTooLarge: return "FrameTooLarge";
    case ErrorCode::kIncompleteFrame: return "IncompleteFrame";
    case ErrorCode::kMalformedJson: return "MalformedJson";
    case ErrorCode::kUnknownKind: return "UnknownKind";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kScenarioParseError: return "ScenarioParseError";
  }
  return "Unknown";
}

}  // namespace augview
