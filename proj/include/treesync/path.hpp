#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace treesync {

/// Node identifier: a list of non-empty name segments. The empty list is the
/// root "/". Ordering is component-wise with a proper prefix sorting first,
/// so every ancestor sorts before its descendants.
class Path {
 public:
  Path() = default;
  /// Throws std::invalid_argument on an empty segment or one containing '/'.
  explicit Path(std::vector<std::string> components);

  /// Parses "/a/b/c"; "/" is the root. Throws std::invalid_argument.
  static Path parse(std::string_view text);

  const std::vector<std::string>& components() const noexcept { return components_; }
  std::size_t depth() const noexcept { return components_.size(); }
  bool is_root() const noexcept { return components_.empty(); }

  /// Precondition: !is_root().
  Path parent() const;
  Path child(std::string name) const;

  /// Strict ancestor test (n ≺ m).
  bool is_ancestor_of(const Path& other) const noexcept;
  bool is_parent_of(const Path& other) const noexcept;
  bool comparable(const Path& other) const noexcept;

  std::string str() const;

  friend bool operator==(const Path&, const Path&) = default;
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) noexcept;

 private:
  std::vector<std::string> components_;
};

}  // namespace treesync
