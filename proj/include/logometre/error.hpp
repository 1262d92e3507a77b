#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace logometre {

/// Data error raised by the pipeline. `kind()` is the stable error name
/// (e.g. "MalformedLine", "PivotAbsent") printed by the CLI and returned by
/// the explorer API; `line()` is set for errors tied to an input line.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& message,
        std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(message), kind_(std::move(kind)), line_(line) {}

  const std::string& kind() const noexcept { return kind_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

private:
  std::string kind_;
  std::optional<std::size_t> line_;
};

namespace errors {
inline constexpr const char* kMalformedLine = "MalformedLine";
inline constexpr const char* kMalformedManifest = "MalformedManifest";
inline constexpr const char* kUnknownTag = "UnknownTag";
inline constexpr const char* kDuplicateDocumentId = "DuplicateDocumentId";
inline constexpr const char* kEmptyDocument = "EmptyDocument";
inline constexpr const char* kLanguageMismatch = "LanguageMismatch";
inline constexpr const char* kUnknownMetadataKey = "UnknownMetadataKey";
inline constexpr const char* kDuplicateLexiconEntry = "DuplicateLexiconEntry";
inline constexpr const char* kLexiconLanguageMismatch = "LexiconLanguageMismatch";
inline constexpr const char* kPivotAbsent = "PivotAbsent";
inline constexpr const char* kZeroMatrix = "ZeroMatrix";
inline constexpr const char* kAxisOutOfRange = "AxisOutOfRange";
inline constexpr const char* kTooFewPoints = "TooFewPoints";
inline constexpr const char* kParameterMismatch = "ParameterMismatch";
inline constexpr const char* kInvalidArgument = "InvalidArgument";
inline constexpr const char* kSchemaError = "SchemaError";
inline constexpr const char* kCorpusMismatch = "CorpusMismatch";
inline constexpr const char* kIoError = "IoError";
}  // namespace errors

}  // namespace logometre
