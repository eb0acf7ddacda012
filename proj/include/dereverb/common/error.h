// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_COMMON_ERROR_H_
#define DEREVERB_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace dereverb {

enum class ErrorCode {
  kInvalidArgument,
  kIoFailure,
  kUnsupportedFormat,
  kCorruptHeader,
  kEmptyAudio,
  kNonColaParams,
  kAllZeroRir,
  kEmptyAfterTrim,
  kNoFilesFound,
  kInsufficientData,
  kEmptySplit,
  kVersionMismatch,
  kParseError,
  kShapeMismatch,
  kNotScalarLoss,
  kWrongFrameCount,
  kNonFiniteLoss,
  kKindMismatch,
  kZeroEnergy,
  kInsufficientDecay,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type; `code()`
// lets callers (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Line-numbered parse failure, used by the manifest reader.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what);

  int line() const { return line_; }

 private:
  int line_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& what);

}  // namespace dereverb

#endif  // DEREVERB_COMMON_ERROR_H_
