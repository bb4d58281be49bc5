#pragma once

#include <map>
#include <span>

#include "treesync/command.hpp"
#include "treesync/path.hpp"
#include "treesync/value.hpp"

namespace treesync {

/// Snapshot of the namespace. Only non-Empty values are stored; unmapped
/// paths read as Empty. The root is an implicit container and never holds a
/// value, so first-level nodes need no directory above them.
class Filesystem {
 public:
  using Entries = std::map<Path, Value>;

  Filesystem() = default;
  explicit Filesystem(Entries entries);

  const Value& read(const Path& p) const;
  /// Raw store without tree checks; storing Empty erases the entry.
  void set(const Path& p, Value v);

  const Entries& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// True iff some stored entry lies strictly below p.
  bool has_descendants(const Path& p) const;

  friend bool operator==(const Filesystem&, const Filesystem&) = default;

 private:
  Entries entries_;
};

/// Tree property: every stored non-root entry below the first level has a
/// Directory parent, and the root stores nothing.
bool is_valid(const Filesystem& fs);

/// Applies c in place. Throws Error{PreconditionFailed} when the stored value
/// differs from c.input and Error{TreeBroken} when the result would violate
/// the tree property; fs is unchanged on failure.
void apply_in_place(Filesystem& fs, const Command& c);

Filesystem apply_command(Filesystem fs, const Command& c);

/// Left-to-right fold; errors carry the index of the breaking command.
Filesystem apply_sequence(Filesystem fs, std::span<const Command> seq);

/// Non-throwing variant; returns false if some command breaks fs.
bool try_apply_sequence(Filesystem& fs, std::span<const Command> seq);

}  // namespace treesync
