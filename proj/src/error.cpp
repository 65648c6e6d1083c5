#include "loreseval/error.hpp"

namespace loreseval {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LineCountMismatch: return "LineCountMismatch";
    case ErrorCode::EncodingError: return "EncodingError";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::BlankLine: return "BlankLine";
    case ErrorCode::RatioInvalid: return "RatioInvalid";
    case ErrorCode::CorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyReference: return "EmptyReference";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::SqmOutOfRange: return "SqmOutOfRange";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::NoMatchingRecords: return "NoMatchingRecords";
    case ErrorCode::AnnotatorCountNotTwo: return "AnnotatorCountNotTwo";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::EmptyDimension: return "EmptyDimension";
    case ErrorCode::TemplateKeyCollision: return "TemplateKeyCollision";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& message,
                    std::optional<std::size_t> line) {
  std::string out{to_string(code)};
  if (line) out += " (line " + std::to_string(*line) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(compose(code, message, line)), code_(code), line_(line) {}

}  // namespace loreseval
