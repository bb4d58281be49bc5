#include "treesync/refluence.hpp"

#include <cstdint>
#include <map>
#include <set>

#include "treesync/error.hpp"

namespace treesync {

namespace {

std::string pair_text(const Path& upper, const Path& lower) {
  return upper.str() + " and " + lower.str();
}

// |Iₙ ∩ I_parent| per node, from each replica's own up-links. A replica has
// at most one command per node, and canonicity makes its up-link land on the
// parent whenever it has any command above.
std::vector<std::size_t> shared_with_parent(const SortedUnion& u, WorkCounters* counters) {
  std::vector<std::vector<std::size_t>> per_replica(u.replica_count);
  for (std::size_t n = 0; n < u.nodes.size(); ++n) {
    for (std::size_t k = u.nodes[n].begin; k < u.nodes[n].end; ++k)
      for (auto r : u.provenance(k)) per_replica[r].push_back(n);
  }
  std::vector<std::size_t> shared(u.nodes.size(), 0);
  for (const auto& list : per_replica) {
    const UpIndex idx =
        link_up(list.size(), [&](std::size_t i) -> const Path& { return u.node_path(list[i]); });
    if (counters) counters->link_steps += idx.link_steps;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (idx.up[i] == UpIndex::npos) continue;
      if (u.node_path(list[idx.up[i]]).is_parent_of(u.node_path(list[i]))) ++shared[list[i]];
    }
  }
  return shared;
}

}  // namespace

std::optional<std::string> refluence_violation(const SortedUnion& u, IndexSetMode mode,
                                               WorkCounters* counters) {
  const std::size_t count = u.nodes.size();
  std::vector<const Value*> input(count);
  for (std::size_t n = 0; n < count; ++n) {
    const auto [begin, end] = u.nodes[n];
    input[n] = &u.commands[begin].input;
    for (std::size_t k = begin + 1; k < end; ++k) {
      if (u.commands[k].input != *input[n])
        return "condition (a): commands on " + u.node_path(n).str() + " have different inputs";
    }
  }

  if (mode == IndexSetMode::Auto)
    mode = u.replica_count <= 64 ? IndexSetMode::Bitmask : IndexSetMode::Counting;

  std::vector<std::uint64_t> mask;
  std::vector<std::size_t> size, shared;
  if (mode == IndexSetMode::Bitmask) {
    if (u.replica_count > 64) throw std::invalid_argument("bitmask mode supports at most 64 replicas");
    mask.assign(count, 0);
    for (std::size_t n = 0; n < count; ++n)
      for (std::size_t k = u.nodes[n].begin; k < u.nodes[n].end; ++k)
        for (auto r : u.provenance(k)) mask[n] |= std::uint64_t{1} << r;
  } else {
    size.assign(count, 0);
    for (std::size_t n = 0; n < count; ++n)
      for (std::size_t k = u.nodes[n].begin; k < u.nodes[n].end; ++k)
        size[n] += u.provenance(k).size();
    shared = shared_with_parent(u, counters);
  }

  const UpIndex idx = build_node_up_index(u);
  if (counters) counters->link_steps += idx.link_steps;
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t p = idx.up[n];
    if (p == UpIndex::npos) continue;
    const Path& here = u.node_path(n);
    const Path& above = u.node_path(p);
    if (!above.is_parent_of(here))
      return "condition (b): " + pair_text(above, here) + " are mentioned but " +
             here.parent().str() + " is not";
    if (!input[p]->is_directory()) {
      const bool subset = mode == IndexSetMode::Bitmask ? (mask[n] & ~mask[p]) == 0
                                                        : shared[n] == size[n];
      if (!subset)
        return "condition (c): " + above.str() + " is not a directory but some replica edits " +
               here.str() + " without editing it";
    }
    if (!input[n]->is_empty()) {
      const bool superset = mode == IndexSetMode::Bitmask ? (mask[p] & ~mask[n]) == 0
                                                          : shared[n] == size[p];
      if (!superset)
        return "condition (d): " + here.str() + " is not empty but some replica edits " +
               above.str() + " without editing it";
    }
  }
  return std::nullopt;
}

std::optional<std::string> refluence_violation(std::span<const CanonicalSet> sets,
                                               IndexSetMode mode) {
  return refluence_violation(build_sorted_union(sets), mode);
}

bool check_jointly_refluent(std::span<const CanonicalSet> sets) {
  return !refluence_violation(sets);
}

std::vector<CanonicalSet> require_canonical_inputs(std::span<const std::vector<Command>> lists) {
  std::vector<CanonicalSet> out;
  out.reserve(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i) {
    if (auto why = canonical_violation(lists[i]))
      throw Error(ErrorKind::NotCanonicalInput, "set " + std::to_string(i) + ": " + *why);
    out.push_back(CanonicalSet::from(lists[i]));
  }
  return out;
}

bool check_pairwise_refluent(const CanonicalSet& a, const CanonicalSet& b) {
  std::map<Path, Value> input;
  for (const auto& c : a) input.emplace(c.node, c.input);
  for (const auto& c : b) {
    auto [it, fresh] = input.emplace(c.node, c.input);
    if (!fresh && it->second != c.input) return false;
  }
  auto mentioned = [&](const Path& p) { return input.count(p) > 0; };

  for (const auto& [node, value] : input) {
    if (node.depth() < 2) continue;
    // Gap check: any mentioned ancestor requires the parent to be mentioned.
    const Path parent = node.parent();
    if (!mentioned(parent)) {
      for (Path q = parent; q.depth() >= 1; q = q.parent()) {
        if (mentioned(q)) return false;
        if (q.depth() == 1) break;
      }
      continue;
    }
    for (const CanonicalSet* side : {&a, &b}) {
      const bool has_child = side->find(node) != nullptr;
      const bool has_parent = side->find(parent) != nullptr;
      if (has_child && !has_parent && !input.at(parent).is_directory()) return false;
      if (has_parent && !has_child && !value.is_empty()) return false;
    }
  }
  return true;
}

Filesystem witness_filesystem(std::span<const CanonicalSet> sets) {
  const SortedUnion u = build_sorted_union(sets);
  if (auto why = refluence_violation(u)) throw Error(ErrorKind::NotRefluent, *why);

  std::set<Path> mentioned;
  for (std::size_t n = 0; n < u.nodes.size(); ++n) mentioned.insert(u.node_path(n));

  Filesystem fs;
  for (std::size_t n = 0; n < u.nodes.size(); ++n) {
    const auto [begin, end] = u.nodes[n];
    const Value& x = u.commands[begin].input;
    if (!x.is_empty()) fs.set(u.node_path(n), x);
  }
  for (std::size_t n = 0; n < u.nodes.size(); ++n) {
    const auto [begin, end] = u.nodes[n];
    const Path& node = u.node_path(n);
    bool needs_directory_above = !u.commands[begin].input.is_empty();
    for (std::size_t k = begin; k < end && !needs_directory_above; ++k)
      needs_directory_above = u.commands[k].is_constructor();
    if (!needs_directory_above) continue;
    for (Path q = node; q.depth() >= 2;) {
      q = q.parent();
      if (mentioned.count(q) || fs.read(q).is_directory()) break;
      fs.set(q, Value::directory());
    }
  }
  return fs;
}

bool check_applicable(const CanonicalSet& set, const Filesystem& fs) {
  for (const auto& c : set) {
    if (fs.read(c.node) != c.input) return false;
    if (c.is_destructor()) {
      for (auto it = fs.entries().upper_bound(c.node);
           it != fs.entries().end() && c.node.is_ancestor_of(it->first); ++it) {
        if (set.find(it->first) == nullptr) return false;
      }
    }
    if (c.is_constructor()) {
      for (Path q = c.node; q.depth() >= 2;) {
        q = q.parent();
        if (set.find(q) == nullptr && !fs.read(q).is_directory()) return false;
      }
    }
  }
  return true;
}

}  // namespace treesync
