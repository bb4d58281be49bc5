#include "treesync/value.hpp"

namespace treesync {

char type_letter(ValueType t) noexcept {
  switch (t) {
    case ValueType::Empty: return 'E';
    case ValueType::File: return 'F';
    case ValueType::Directory: return 'D';
  }
  return '?';
}

std::string Value::describe() const {
  if (is_file()) return "F(" + content_ + ")";
  return std::string(1, type_letter(type_));
}

}  // namespace treesync
