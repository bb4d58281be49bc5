#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treesync/path.hpp"
#include "treesync/value.hpp"

namespace treesync {

class Filesystem;

/// A single-node filesystem command ⟨node, input, output⟩. `input` is the
/// precondition value, `output` the value stored afterwards.
///
/// Equality is on (node, input, output) only; `origin` records which replica
/// supplied the command and takes part in processing order, not identity.
struct Command {
  Path node;
  Value input;
  Value output;
  std::optional<std::uint32_t> origin;

  bool is_null() const noexcept { return input == output; }
  bool is_constructor() const noexcept { return input.type() < output.type(); }
  bool is_destructor() const noexcept { return input.type() > output.type(); }
  bool is_edit() const noexcept { return input.is_file() && output.is_file() && input != output; }

  std::string describe() const;

  friend bool operator==(const Command& a, const Command& b) noexcept {
    return a.node == b.node && a.input == b.input && a.output == b.output;
  }
};

using CommandSequence = std::vector<Command>;

/// Total order on command identity: (node, input, output).
std::strong_ordering compare_identity(const Command& a, const Command& b) noexcept;

/// Processing order: (node, origin, output, input). Used to pick
/// deterministic same-node winners.
bool sort_key_less(const Command& a, const Command& b) noexcept;

Command inverse(const Command& c);
/// Inverse of a sequence: inverted commands in reverse order.
CommandSequence inverse(std::span<const Command> seq);

/// True iff s must be executed before t (s ≪ t): either s deletes a child
/// before t removes the parent directory, or s creates the parent directory
/// before t fills the child.
bool must_precede(const Command& s, const Command& t) noexcept;

/// Conflict predicate: different commands on one node, or an upper command
/// producing a non-directory while a lower command produces non-empty content.
bool conflicts(const Command& s, const Command& t) noexcept;

/// Sampled semantic equivalence: on every sample both sequences break, or
/// both succeed with identical results.
bool semantically_equal_on(std::span<const Command> a, std::span<const Command> b,
                           std::span<const Filesystem> samples);

}  // namespace treesync
