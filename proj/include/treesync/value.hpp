#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace treesync {

/// Value types, ordered Empty < File < Directory.
enum class ValueType : std::uint8_t { Empty = 0, File = 1, Directory = 2 };

char type_letter(ValueType t) noexcept;

/// Content stored at a node. File contents are opaque bytes; Empty and
/// Directory carry none.
class Value {
 public:
  Value() = default;  // Empty

  static Value empty() { return Value{}; }
  static Value directory() { return Value{ValueType::Directory, {}}; }
  static Value file(std::string content) { return Value{ValueType::File, std::move(content)}; }

  ValueType type() const noexcept { return type_; }
  const std::string& content() const noexcept { return content_; }

  bool is_empty() const noexcept { return type_ == ValueType::Empty; }
  bool is_file() const noexcept { return type_ == ValueType::File; }
  bool is_directory() const noexcept { return type_ == ValueType::Directory; }

  /// Short human-readable form: E, D or F(content).
  std::string describe() const;

  friend bool operator==(const Value&, const Value&) = default;
  friend std::strong_ordering operator<=>(const Value&, const Value&) = default;

 private:
  Value(ValueType t, std::string c) : type_(t), content_(std::move(c)) {}

  ValueType type_ = ValueType::Empty;
  std::string content_;
};

}  // namespace treesync
