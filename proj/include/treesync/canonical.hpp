#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treesync/command.hpp"

namespace treesync {

/// Nearest-ancestor links over a path-sorted list.
struct UpIndex {
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  /// up[i] is the index of the nearest earlier entry whose node is a strict
  /// ancestor of entry i's node, or npos.
  std::vector<std::size_t> up;
  /// Number of candidate links examined; at most 2·size.
  std::size_t link_steps = 0;
};

/// Up-link construction over any path-sorted sequence; node_at(i) yields the
/// i-th path.
template <class NodeAt>
UpIndex link_up(std::size_t n, NodeAt node_at) {
  UpIndex idx;
  idx.up.assign(n, UpIndex::npos);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t cand = i - 1;
    while (true) {
      ++idx.link_steps;
      if (cand == UpIndex::npos || node_at(cand).is_ancestor_of(node_at(i))) {
        idx.up[i] = cand;
        break;
      }
      cand = idx.up[cand];
    }
  }
  return idx;
}

/// Builds up-links for nodes sorted by path order. Linear after sorting:
/// each link is followed and discarded at most once.
UpIndex build_up_index(std::span<const Path> sorted_nodes);
UpIndex build_up_index(std::span<const Command> sorted_commands);

/// An unordered command set with no null commands, at most one command per
/// node, and ≪-connected. Stored sorted by node path.
class CanonicalSet {
 public:
  CanonicalSet() = default;

  /// Validates; throws Error{NotCanonical} with the first violation found.
  static CanonicalSet from(std::vector<Command> commands);
  /// Caller guarantees the commands are canonical and sorted by path.
  static CanonicalSet assume_canonical(std::vector<Command> sorted_commands);

  const std::vector<Command>& commands() const noexcept { return commands_; }
  std::size_t size() const noexcept { return commands_.size(); }
  bool empty() const noexcept { return commands_.empty(); }
  auto begin() const noexcept { return commands_.begin(); }
  auto end() const noexcept { return commands_.end(); }

  /// The command on node p, if any.
  const Command* find(const Path& p) const;
  bool contains(const Command& c) const;

  friend bool operator==(const CanonicalSet&, const CanonicalSet&) = default;

 private:
  std::vector<Command> commands_;
};

/// First violated condition in human-readable form, e.g.
/// "null command at /a", or nullopt when the set is canonical.
std::optional<std::string> canonical_violation(std::span<const Command> commands);
bool is_canonical(std::span<const Command> commands);

/// Constructors top-down, then every other command bottom-up.
CommandSequence order_canonical(const CanonicalSet& set);
/// Same, validating the input first (Error{NotCanonical}).
CommandSequence order_canonical(std::span<const Command> commands);

enum class CanonizeMode { Strict, Lenient };

/// Collapses each same-node run of a sequence into one command (first input,
/// last output) and drops null results. Strict mode rejects sequences that
/// are evidently breaking with Error{BrokenSequence}: a same-node run whose
/// adjacent output and input differ, or a collapsed set that is not
/// canonical.
CanonicalSet canonize(std::span<const Command> seq, CanonizeMode mode = CanonizeMode::Strict);

/// True iff B ⊆ A and B can run first: no command of A∖B must precede a
/// command of B.
bool is_initial_segment(const CanonicalSet& b, const CanonicalSet& a);

/// Set algebra on command identity; results are sorted by path.
std::vector<Command> set_difference(const CanonicalSet& a, const CanonicalSet& b);
std::vector<Command> set_intersection(const CanonicalSet& a, const CanonicalSet& b);

}  // namespace treesync
