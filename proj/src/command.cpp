#include "treesync/command.hpp"

#include <algorithm>

#include "treesync/filesystem.hpp"

namespace treesync {

std::string Command::describe() const {
  return "(" + node.str() + "," + input.describe() + "," + output.describe() + ")";
}

std::strong_ordering compare_identity(const Command& a, const Command& b) noexcept {
  if (auto c = a.node <=> b.node; c != 0) return c;
  if (auto c = a.input <=> b.input; c != 0) return c;
  return a.output <=> b.output;
}

bool sort_key_less(const Command& a, const Command& b) noexcept {
  if (auto c = a.node <=> b.node; c != 0) return c < 0;
  if (a.origin != b.origin) return a.origin < b.origin;
  if (auto c = a.output <=> b.output; c != 0) return c < 0;
  return a.input < b.input;
}

Command inverse(const Command& c) { return Command{c.node, c.output, c.input, c.origin}; }

CommandSequence inverse(std::span<const Command> seq) {
  CommandSequence out;
  out.reserve(seq.size());
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

bool must_precede(const Command& s, const Command& t) noexcept {
  using T = ValueType;
  const auto si = s.input.type(), so = s.output.type();
  const auto ti = t.input.type(), to = t.output.type();
  // ⟨n, DF, E⟩ ≪ ⟨parent n, D, FE⟩: clear the child, then demote the parent.
  if (t.node.is_parent_of(s.node) && si != T::Empty && so == T::Empty && ti == T::Directory &&
      to != T::Directory)
    return true;
  // ⟨parent n, EF, D⟩ ≪ ⟨n, E, FD⟩: create the directory, then fill the child.
  if (s.node.is_parent_of(t.node) && si != T::Directory && so == T::Directory &&
      ti == T::Empty && to != T::Empty)
    return true;
  return false;
}

bool conflicts(const Command& s, const Command& t) noexcept {
  if (s.node == t.node) return !(s == t);
  if (s.node.is_ancestor_of(t.node))
    return !s.output.is_directory() && !t.output.is_empty();
  if (t.node.is_ancestor_of(s.node))
    return !t.output.is_directory() && !s.output.is_empty();
  return false;
}

bool semantically_equal_on(std::span<const Command> a, std::span<const Command> b,
                           std::span<const Filesystem> samples) {
  return std::all_of(samples.begin(), samples.end(), [&](const Filesystem& fs) {
    Filesystem ra = fs, rb = fs;
    const bool oka = try_apply_sequence(ra, a);
    const bool okb = try_apply_sequence(rb, b);
    if (oka != okb) return false;
    return !oka || ra == rb;
  });
}

}  // namespace treesync
