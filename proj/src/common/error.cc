// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "dereverb/common/error.h"

namespace dereverb {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kCorruptHeader: return "CorruptHeader";
    case ErrorCode::kEmptyAudio: return "EmptyAudio";
    case ErrorCode::kNonColaParams: return "NonColaParams";
    case ErrorCode::kAllZeroRir: return "AllZeroRir";
    case ErrorCode::kEmptyAfterTrim: return "EmptyAfterTrim";
    case ErrorCode::kNoFilesFound: return "NoFilesFound";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotScalarLoss: return "NotScalarLoss";
    case ErrorCode::kWrongFrameCount: return "WrongFrameCount";
    case ErrorCode::kNonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kZeroEnergy: return "ZeroEnergy";
    case ErrorCode::kInsufficientDecay: return "InsufficientDecay";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
      code_(code) {}

ParseError::ParseError(int line, const std::string& what)
    : Error(ErrorCode::kParseError,
            "line " + std::to_string(line) + ": " + what),
      line_(line) {}

void Fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dereverb
