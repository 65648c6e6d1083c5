#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace loreseval {

enum class ErrorCode {
  // corpus
  LineCountMismatch,
  EncodingError,
  EmptyFile,
  BlankLine,
  RatioInvalid,
  CorpusTooSmall,
  // metrics
  LengthMismatch,
  EmptyInput,
  EmptyReference,
  ZeroBaseline,
  InvalidConfig,
  // humaneval
  SchemaError,
  UnknownCategory,
  SqmOutOfRange,
  DuplicateKey,
  NoMatchingRecords,
  AnnotatorCountNotTwo,
  // greenreport
  InvalidProfile,
  NegativeInput,
  // hpo
  EmptyDimension,
  TemplateKeyCollision,
  // shared
  IoError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; `code()` distinguishes the failure
// and `line()` carries a 1-based input line where one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace loreseval
