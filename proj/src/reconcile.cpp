#include "treesync/reconcile.hpp"

#include <algorithm>

#include "treesync/error.hpp"
#include "treesync/refluence.hpp"

namespace treesync {

namespace {

CommandSequence ordered(std::vector<Command> sorted_subset) {
  return order_canonical(CanonicalSet::assume_canonical(std::move(sorted_subset)));
}

}  // namespace

CanonicalSet diff(const Filesystem& fs_from, const Filesystem& fs_to) {
  std::vector<Command> out;
  auto a = fs_from.entries().begin(), a_end = fs_from.entries().end();
  auto b = fs_to.entries().begin(), b_end = fs_to.entries().end();
  while (a != a_end || b != b_end) {
    if (b == b_end || (a != a_end && a->first < b->first)) {
      out.push_back({a->first, a->second, Value::empty(), {}});
      ++a;
    } else if (a == a_end || b->first < a->first) {
      out.push_back({b->first, Value::empty(), b->second, {}});
      ++b;
    } else {
      if (a->second != b->second) out.push_back({a->first, a->second, b->second, {}});
      ++a, ++b;
    }
  }
  return CanonicalSet::assume_canonical(std::move(out));
}

void require_merger(std::span<const CanonicalSet> sets, const CanonicalSet& m) {
  const SortedUnion u = build_sorted_union(sets);
  const auto& mc = m.commands();

  // Both sides are in path order; walk the union's nodes alongside m.
  std::size_t n = 0;
  for (const auto& c : mc) {
    while (n < u.nodes.size() && u.node_path(n) < c.node) ++n;
    bool found = false;
    if (n < u.nodes.size() && u.node_path(n) == c.node) {
      for (std::size_t k = u.nodes[n].begin; k < u.nodes[n].end && !found; ++k)
        found = u.commands[k] == c;
    }
    if (!found) throw Error(ErrorKind::NotAMerger, c.describe() + " is not in any input set");
  }

  // non_empty_before[i] = number of commands among mc[0..i) with non-Empty output.
  std::vector<std::size_t> non_empty_before(mc.size() + 1, 0);
  for (std::size_t i = 0; i < mc.size(); ++i)
    non_empty_before[i + 1] = non_empty_before[i] + (mc[i].output.is_empty() ? 0 : 1);

  for (const auto& c : u.commands) {
    // Either c is in m, or m holds a different command on the same node.
    if (m.find(c.node)) continue;
    bool blocked = false;
    if (!c.output.is_empty()) {
      for (Path q = c.node; q.depth() >= 2 && !blocked;) {
        q = q.parent();
        const Command* above = m.find(q);
        blocked = above && !above->output.is_directory();
      }
    }
    if (!blocked && !c.output.is_directory()) {
      auto first = std::upper_bound(mc.begin(), mc.end(), c.node,
                                    [](const Path& p, const Command& x) { return p < x.node; });
      auto last = first;
      while (last != mc.end() && c.node.is_ancestor_of(last->node)) ++last;
      blocked = non_empty_before[last - mc.begin()] != non_empty_before[first - mc.begin()];
    }
    if (!blocked)
      throw Error(ErrorKind::NotAMerger, c.describe() + " could be added without conflict");
  }
}

SyncPlan make_plan(std::span<const CanonicalSet> sets, const CanonicalSet& m) {
  require_merger(sets, m);
  SyncPlan plan;
  plan.merger = m;
  plan.per_replica.reserve(sets.size());
  for (const auto& a : sets) {
    ReplicaPlan r;
    r.discarded = set_difference(a, m);
    r.rollback = inverse(ordered(r.discarded));
    r.apply = ordered(set_difference(m, a));
    plan.per_replica.push_back(std::move(r));
  }
  return plan;
}

SyncPlan make_plan(std::span<const CanonicalSet> sets, const Merger& m) {
  return make_plan(sets, m.commands);
}

AsyncOutcome async_merge(const CanonicalSet& a_current, const CanonicalSet& m,
                         std::span<const CanonicalSet> sets_context) {
  if (!sets_context.empty()) require_merger(sets_context, m);
  const CanonicalSet pair[] = {a_current, m};
  const Merger extended = merger_extending(pair, m);
  const CanonicalSet& star = extended.commands;

  AsyncOutcome out;
  auto dropped = set_difference(a_current, star);
  out.instructions = inverse(ordered(dropped));
  const CommandSequence forward = ordered(set_difference(star, a_current));
  out.instructions.insert(out.instructions.end(), forward.begin(), forward.end());
  out.carried_forward = CanonicalSet::assume_canonical(set_difference(star, m));
  out.discarded = CanonicalSet::assume_canonical(std::move(dropped));
  out.extended_merger = star;
  return out;
}

bool verify_convergence(const Filesystem& fs0, std::span<const CanonicalSet> sets,
                        const SyncPlan& plan) {
  if (plan.per_replica.size() != sets.size()) return false;
  Filesystem target = fs0;
  if (!try_apply_sequence(target, order_canonical(plan.merger))) return false;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    Filesystem fs = fs0;
    if (!try_apply_sequence(fs, order_canonical(sets[i]))) return false;
    if (!try_apply_sequence(fs, plan.per_replica[i].rollback)) return false;
    if (!try_apply_sequence(fs, plan.per_replica[i].apply)) return false;
    if (!(fs == target)) return false;
  }
  return true;
}

}  // namespace treesync
