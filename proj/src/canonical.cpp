#include "treesync/canonical.hpp"

#include <algorithm>

#include "treesync/error.hpp"

namespace treesync {

namespace {

bool node_less(const Command& a, const Command& b) { return a.node < b.node; }

std::vector<Command> sorted_by_node(std::span<const Command> commands) {
  std::vector<Command> sorted(commands.begin(), commands.end());
  if (!std::is_sorted(sorted.begin(), sorted.end(), node_less))
    std::stable_sort(sorted.begin(), sorted.end(), node_less);
  return sorted;
}

std::optional<std::string> violation_sorted(std::span<const Command> cmds) {
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    if (cmds[i].is_null()) return "null command at " + cmds[i].node.str();
    if (i > 0 && cmds[i - 1].node == cmds[i].node)
      return "multiple commands on " + cmds[i].node.str();
  }
  const UpIndex idx = build_up_index(cmds);
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    if (idx.up[i] == UpIndex::npos) continue;
    const Command& above = cmds[idx.up[i]];
    const Command& here = cmds[i];
    if (!above.node.is_parent_of(here.node))
      return "commands on " + above.node.str() + " and " + here.node.str() +
             " without a command on the parent " + here.node.parent().str();
    if (!must_precede(above, here) && !must_precede(here, above))
      return "commands on " + above.node.str() + " and its child " + here.node.str() +
             " are not execution-order related";
  }
  return std::nullopt;
}

}  // namespace

UpIndex build_up_index(std::span<const Path> nodes) {
  return link_up(nodes.size(), [&](std::size_t i) -> const Path& { return nodes[i]; });
}

UpIndex build_up_index(std::span<const Command> sorted_commands) {
  return link_up(sorted_commands.size(),
                 [&](std::size_t i) -> const Path& { return sorted_commands[i].node; });
}

CanonicalSet CanonicalSet::from(std::vector<Command> commands) {
  if (!std::is_sorted(commands.begin(), commands.end(), node_less))
    std::stable_sort(commands.begin(), commands.end(), node_less);
  if (auto why = violation_sorted(commands)) throw Error(ErrorKind::NotCanonical, *why);
  CanonicalSet s;
  s.commands_ = std::move(commands);
  return s;
}

CanonicalSet CanonicalSet::assume_canonical(std::vector<Command> sorted_commands) {
  CanonicalSet s;
  s.commands_ = std::move(sorted_commands);
  return s;
}

const Command* CanonicalSet::find(const Path& p) const {
  auto it = std::lower_bound(commands_.begin(), commands_.end(), p,
                             [](const Command& c, const Path& q) { return c.node < q; });
  return it != commands_.end() && it->node == p ? &*it : nullptr;
}

bool CanonicalSet::contains(const Command& c) const {
  const Command* hit = find(c.node);
  return hit != nullptr && *hit == c;
}

std::optional<std::string> canonical_violation(std::span<const Command> commands) {
  return violation_sorted(sorted_by_node(commands));
}

bool is_canonical(std::span<const Command> commands) { return !canonical_violation(commands); }

CommandSequence order_canonical(const CanonicalSet& set) {
  const auto& cmds = set.commands();
  CommandSequence out;
  out.reserve(cmds.size());
  for (const auto& c : cmds)
    if (c.is_constructor()) out.push_back(c);
  for (auto it = cmds.rbegin(); it != cmds.rend(); ++it)
    if (!it->is_constructor()) out.push_back(*it);
  return out;
}

CommandSequence order_canonical(std::span<const Command> commands) {
  return order_canonical(CanonicalSet::from({commands.begin(), commands.end()}));
}

CanonicalSet canonize(std::span<const Command> seq, CanonizeMode mode) {
  std::vector<Command> sorted = sorted_by_node(seq);
  std::vector<Command> out;
  std::size_t run = 0;
  while (run < sorted.size()) {
    std::size_t end = run + 1;
    while (end < sorted.size() && sorted[end].node == sorted[run].node) {
      if (mode == CanonizeMode::Strict && sorted[end - 1].output != sorted[end].input) {
        throw Error(ErrorKind::BrokenSequence,
                    "discontinuous commands on " + sorted[run].node.str() + ": " +
                        sorted[end - 1].output.describe() + " then " +
                        sorted[end].input.describe());
      }
      ++end;
    }
    Command merged{sorted[run].node, sorted[run].input, sorted[end - 1].output,
                   sorted[run].origin};
    if (!merged.is_null()) out.push_back(std::move(merged));
    run = end;
  }
  if (auto why = violation_sorted(out)) throw Error(ErrorKind::BrokenSequence, *why);
  return CanonicalSet::assume_canonical(std::move(out));
}

bool is_initial_segment(const CanonicalSet& b, const CanonicalSet& a) {
  const auto& ac = a.commands();
  const auto& bc = b.commands();
  std::vector<char> in_b(ac.size(), 0);
  std::size_t j = 0;
  for (const auto& cmd : bc) {
    while (j < ac.size() && ac[j].node < cmd.node) ++j;
    if (j == ac.size() || !(ac[j] == cmd)) return false;
    in_b[j] = 1;
  }
  const UpIndex idx = build_up_index(std::span<const Command>(ac));
  for (std::size_t i = 0; i < ac.size(); ++i) {
    const std::size_t p = idx.up[i];
    if (p == UpIndex::npos) continue;
    if (must_precede(ac[i], ac[p]) && in_b[p] && !in_b[i]) return false;
    if (must_precede(ac[p], ac[i]) && in_b[i] && !in_b[p]) return false;
  }
  return true;
}

std::vector<Command> set_difference(const CanonicalSet& a, const CanonicalSet& b) {
  std::vector<Command> out;
  for (const auto& c : a)
    if (!b.contains(c)) out.push_back(c);
  return out;
}

std::vector<Command> set_intersection(const CanonicalSet& a, const CanonicalSet& b) {
  std::vector<Command> out;
  for (const auto& c : a)
    if (b.contains(c)) out.push_back(c);
  return out;
}

}  // namespace treesync
