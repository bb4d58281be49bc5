#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treesync {

enum class ErrorKind {
  PreconditionFailed,
  TreeBroken,
  NotCanonical,
  BrokenSequence,
  NotRefluent,
  NotCanonicalInput,
  NotCanonicalSubset,
  NotAMerger,
  ScriptExhausted,
  ScriptOutOfRange,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Domain error. what() renders as "<Kind>: <detail>", the form the CLI
/// prints on the diagnostic stream.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string detail,
        std::optional<std::size_t> position = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  /// Index of the offending command when the error came from a sequence.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::string detail_;
  std::optional<std::size_t> position_;
};

}  // namespace treesync
