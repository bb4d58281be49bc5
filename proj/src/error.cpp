#include "treesync/error.hpp"

namespace treesync {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::TreeBroken: return "TreeBroken";
    case ErrorKind::NotCanonical: return "NotCanonical";
    case ErrorKind::BrokenSequence: return "BrokenSequence";
    case ErrorKind::NotRefluent: return "NotRefluent";
    case ErrorKind::NotCanonicalInput: return "NotCanonicalInput";
    case ErrorKind::NotCanonicalSubset: return "NotCanonicalSubset";
    case ErrorKind::NotAMerger: return "NotAMerger";
    case ErrorKind::ScriptExhausted: return "ScriptExhausted";
    case ErrorKind::ScriptOutOfRange: return "ScriptOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string detail, std::optional<std::size_t> position)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(std::move(detail)),
      position_(position) {}

}  // namespace treesync
