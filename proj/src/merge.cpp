#include "treesync/merge.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "treesync/error.hpp"
#include "treesync/refluence.hpp"

namespace treesync {

namespace {

constexpr std::size_t npos = UpIndex::npos;

void require_refluent(const SortedUnion& u, WorkCounters* counters) {
  if (auto why = refluence_violation(u, IndexSetMode::Auto, counters))
    throw Error(ErrorKind::NotRefluent, *why);
}

Merger assemble(const SortedUnion& u, const std::vector<char>& keep) {
  std::vector<Command> cmds;
  Merger m;
  for (std::size_t k = 0; k < u.commands.size(); ++k) {
    if (!keep[k]) continue;
    cmds.push_back(u.commands[k]);
    auto prov = u.provenance(k);
    m.provenance.emplace_back(prov.begin(), prov.end());
  }
  m.commands = CanonicalSet::assume_canonical(std::move(cmds));
  return m;
}

/// Per-invocation scratch state shared by the passes: live commands plus the
/// two node flags. `del_down[n]` means every strict descendant of n must lose
/// its non-Empty-output commands; `up_done[n]` means the non-Directory-output
/// commands on n and on every node above it are already gone.
class Passes {
 public:
  Passes(const SortedUnion& u, WorkCounters* counters)
      : u_(u), wc_(counters ? *counters : scratch_) {
    const UpIndex idx = build_node_up_index(u);
    wc_.link_steps += idx.link_steps;
    up_ = idx.up;
    alive_.assign(u.commands.size(), 1);
    del_down_.assign(u.nodes.size(), 0);
    up_done_.assign(u.nodes.size(), 0);
  }

  std::size_t node_count() const { return u_.nodes.size(); }
  std::size_t up(std::size_t n) const { return up_[n]; }
  const Command& cmd(std::size_t k) const { return u_.commands[k]; }
  const Value& input(std::size_t n) const { return u_.commands[u_.nodes[n].begin].input; }
  bool alive(std::size_t k) const { return alive_[k]; }
  const std::vector<char>& alive_mask() const { return alive_; }
  WorkCounters& counters() { return wc_; }

  std::vector<std::size_t> live_at(std::size_t n) const {
    std::vector<std::size_t> out;
    for (std::size_t k = u_.nodes[n].begin; k < u_.nodes[n].end; ++k)
      if (alive_[k]) out.push_back(k);
    return out;
  }

  template <class Pred>
  void delete_at(std::size_t n, Pred pred) {
    for (std::size_t k = u_.nodes[n].begin; k < u_.nodes[n].end; ++k) {
      if (alive_[k] && pred(u_.commands[k])) {
        alive_[k] = 0;
        ++wc_.deletions;
      }
    }
  }

  void keep_only(std::size_t n, std::size_t winner) {
    delete_at(n, [&](const Command& c) { return &c != &u_.commands[winner]; });
  }

  void flag_down(std::size_t n) {
    if (!del_down_[n]) {
      del_down_[n] = 1;
      ++wc_.flag_writes;
    }
  }

  /// Top-down propagation step: inherits the parent's flag and removes
  /// non-Empty outputs here. Returns whether n is under a flag.
  bool inherit_down(std::size_t n) {
    const std::size_t p = up_[n];
    if (p == npos || !del_down_[p]) return false;
    flag_down(n);
    delete_at(n, [](const Command& c) { return !c.output.is_empty(); });
    return true;
  }

  /// Deletes non-Directory outputs on `start` and every node above it,
  /// stopping at the first node already processed.
  void sweep_up(std::size_t start) {
    for (std::size_t q = start; q != npos && !up_done_[q]; q = up_[q]) {
      up_done_[q] = 1;
      ++wc_.flag_writes;
      ++wc_.upward_steps;
      delete_at(q, [](const Command& c) { return !c.output.is_directory(); });
    }
  }

  void kill(std::size_t k) {
    if (alive_[k]) {
      alive_[k] = 0;
      ++wc_.deletions;
    }
  }

 private:
  const SortedUnion& u_;
  WorkCounters scratch_;
  WorkCounters& wc_;
  std::vector<std::size_t> up_;
  std::vector<char> alive_;
  std::vector<char> del_down_;
  std::vector<char> up_done_;
};

/// The greedy top-down pass over the commands still alive in `pass`.
std::vector<char> greedy_pass(Passes& pass) {
  std::vector<char> keep(pass.alive_mask().size(), 0);
  for (std::size_t n = 0; n < pass.node_count(); ++n) {
    pass.inherit_down(n);
    for (std::size_t k : pass.live_at(n)) {
      keep[k] = 1;
      pass.keep_only(n, k);
      if (!pass.cmd(k).output.is_directory()) pass.flag_down(n);
      break;
    }
  }
  return keep;
}

std::size_t find_node(const SortedUnion& u, const Path& p) {
  std::size_t lo = 0, hi = u.nodes.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (u.node_path(mid) < p) lo = mid + 1; else hi = mid;
  }
  return lo < u.nodes.size() && u.node_path(lo) == p ? lo : npos;
}

}  // namespace

// ---------------------------------------------------------------------------
// DecisionOracle

DecisionOracle DecisionOracle::first_wins() { return DecisionOracle(Mode::FirstWins); }

DecisionOracle DecisionOracle::seeded(std::uint64_t seed) {
  DecisionOracle o(Mode::Seeded);
  o.rng_.seed(seed);
  return o;
}

DecisionOracle DecisionOracle::scripted(std::vector<std::size_t> choices) {
  DecisionOracle o(Mode::Scripted);
  o.script_ = std::move(choices);
  return o;
}

DecisionOracle DecisionOracle::custom(Chooser chooser) {
  DecisionOracle o(Mode::Custom);
  o.chooser_ = std::move(chooser);
  return o;
}

std::size_t DecisionOracle::choose(const DecisionPoint& point) {
  const std::size_t n = point.candidates.size();
  if (observer_) observer_(point, std::nullopt);
  std::size_t pick = 0;
  switch (mode_) {
    case Mode::FirstWins:
      break;
    case Mode::Seeded:
      pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
      break;
    case Mode::Scripted:
      if (next_ >= script_.size())
        throw Error(ErrorKind::ScriptExhausted,
                    "no choice left for decision " + std::to_string(next_) + " at " +
                        point.node.str());
      pick = script_[next_++];
      if (pick >= n)
        throw Error(ErrorKind::ScriptOutOfRange,
                    "choice " + std::to_string(pick) + " at " + point.node.str() + " but only " +
                        std::to_string(n) + " candidates");
      break;
    case Mode::Custom:
      pick = chooser_(point);
      if (pick >= n) throw std::out_of_range("oracle choice out of range");
      break;
  }
  if (observer_) observer_(point, pick);
  return pick;
}

void DecisionOracle::finish() const {
  if (mode_ == Mode::Scripted && next_ != script_.size())
    throw Error(ErrorKind::ScriptOutOfRange,
                std::to_string(script_.size() - next_) + " unused choices in script");
}

// ---------------------------------------------------------------------------
// Greedy merger and the extension variant

Merger greedy_merger(const SortedUnion& u, WorkCounters* counters) {
  require_refluent(u, counters);
  Passes pass(u, counters);
  return assemble(u, greedy_pass(pass));
}

Merger greedy_merger(std::span<const CanonicalSet> sets, WorkCounters* counters) {
  return greedy_merger(build_sorted_union(sets), counters);
}

Merger merger_extending(std::span<const CanonicalSet> sets, const CanonicalSet& forced,
                        WorkCounters* counters) {
  const SortedUnion u = build_sorted_union(sets);
  require_refluent(u, counters);

  std::vector<std::size_t> forced_at(u.nodes.size(), npos);
  for (const auto& c : forced) {
    const std::size_t n = find_node(u, c.node);
    if (n != npos) {
      for (std::size_t k = u.nodes[n].begin; k < u.nodes[n].end; ++k)
        if (u.commands[k] == c) forced_at[n] = k;
    }
    if (n == npos || forced_at[n] == npos)
      throw Error(ErrorKind::NotCanonicalSubset, c.describe() + " is not in the union");
  }

  Passes pass(u, counters);
  // First scan: remove everything in conflict with a forced command.
  for (std::size_t n = 0; n < pass.node_count(); ++n) {
    pass.inherit_down(n);
    const std::size_t f = forced_at[n];
    if (f == npos) continue;
    if (!pass.alive(f))
      throw Error(ErrorKind::NotCanonicalSubset, pass.cmd(f).describe() + " conflicts with the forced set");
    pass.keep_only(n, f);
    if (!pass.cmd(f).output.is_directory()) pass.flag_down(n);
    if (!pass.cmd(f).output.is_empty()) pass.sweep_up(pass.up(n));
  }
  for (std::size_t n = 0; n < pass.node_count(); ++n) {
    const std::size_t f = forced_at[n];
    if (f != npos && !pass.alive(f))
      throw Error(ErrorKind::NotCanonicalSubset, pass.cmd(f).describe() + " conflicts with the forced set");
  }

  // Second scan on the survivors. Node flags restart; the node table is the
  // full union so flags still percolate through emptied nodes.
  Passes second(u, counters);
  for (std::size_t k = 0; k < u.commands.size(); ++k)
    if (!pass.alive(k)) second.kill(k);
  return assemble(u, greedy_pass(second));
}

// ---------------------------------------------------------------------------
// All-mergers generator

Merger generate_merger(const SortedUnion& u, DecisionOracle& oracle, WorkCounters* counters) {
  require_refluent(u, counters);
  Passes pass(u, counters);
  const std::size_t nodes = pass.node_count();

  auto decide = [&](std::size_t n, ConflictClass cls, const std::vector<std::size_t>& live) {
    if (live.size() == 1) return live.front();
    DecisionPoint point{u.node_path(n), cls, {}};
    for (std::size_t k : live) point.candidates.push_back(u.commands[k].describe());
    ++pass.counters().decisions;
    return live[oracle.choose(point)];
  };

  // (1) File-input nodes. They are pairwise uncomparable, so order is free.
  for (std::size_t n = 0; n < nodes; ++n) {
    if (!pass.input(n).is_file()) continue;
    const auto live = pass.live_at(n);
    if (live.empty()) continue;
    const std::size_t w = decide(n, ConflictClass::FileInput, live);
    pass.keep_only(n, w);
    if (!pass.cmd(w).output.is_directory()) pass.flag_down(n);
    if (!pass.cmd(w).output.is_empty()) pass.sweep_up(pass.up(n));
  }

  // (2) Bottom-up: a directory node with live destructors against live
  // constructors on empty children. Downward deletions are deferred to (3).
  std::vector<char> constructor_child(nodes, 0);
  for (std::size_t n = 0; n < nodes; ++n) {
    const std::size_t p = pass.up(n);
    if (p == npos || !pass.input(n).is_empty() || !pass.input(p).is_directory()) continue;
    if (!pass.live_at(n).empty()) constructor_child[p] = 1;
  }
  for (std::size_t n = nodes; n-- > 0;) {
    if (!constructor_child[n] || !pass.input(n).is_directory() || pass.live_at(n).empty()) continue;
    DecisionPoint point{u.node_path(n), ConflictClass::ParentChild,
                        {"keep destructors on " + u.node_path(n).str(),
                         "keep constructors below " + u.node_path(n).str()}};
    ++pass.counters().decisions;
    if (oracle.choose(point) == 0) {
      pass.flag_down(n);
    } else {
      pass.sweep_up(n);
    }
  }

  // (3) Top-down: apply pending downward deletions, then pick one winner per
  // empty-input node.
  for (std::size_t n = 0; n < nodes; ++n) {
    pass.inherit_down(n);
    if (!pass.input(n).is_empty()) continue;
    const auto live = pass.live_at(n);
    if (live.empty()) continue;
    const std::size_t w = decide(n, ConflictClass::EmptyInput, live);
    pass.keep_only(n, w);
    if (pass.cmd(w).output.is_file()) pass.flag_down(n);
  }

  // (4) Bottom-up: one winner per directory-input node; a winner leaving a
  // file removes the destructors above it.
  for (std::size_t n = nodes; n-- > 0;) {
    if (!pass.input(n).is_directory()) continue;
    const auto live = pass.live_at(n);
    if (live.empty()) continue;
    const std::size_t w = decide(n, ConflictClass::DirectoryInput, live);
    pass.keep_only(n, w);
    if (pass.cmd(w).output.is_file()) pass.sweep_up(pass.up(n));
  }

  // Final top-down sweep for downward deletions raised by bottom-up passes.
  for (std::size_t n = 0; n < nodes; ++n) pass.inherit_down(n);

  oracle.finish();
  return assemble(u, pass.alive_mask());
}

Merger generate_merger(std::span<const CanonicalSet> sets, DecisionOracle& oracle,
                       WorkCounters* counters) {
  return generate_merger(build_sorted_union(sets), oracle, counters);
}

bool merger_less(const Merger& a, const Merger& b) {
  const auto& x = a.commands.commands();
  const auto& y = b.commands.commands();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                      [](const Command& s, const Command& t) {
                                        return compare_identity(s, t) < 0;
                                      });
}

std::vector<Merger> explore_generated_mergers(std::span<const CanonicalSet> sets,
                                              std::size_t limit) {
  const SortedUnion u = build_sorted_union(sets);
  require_refluent(u, nullptr);

  std::set<Merger, decltype(&merger_less)> found(&merger_less);
  std::vector<std::size_t> prefix, counts;
  while (found.size() < limit) {
    counts.clear();
    auto oracle = DecisionOracle::custom([&](const DecisionPoint& point) {
      const std::size_t i = counts.size();
      counts.push_back(point.candidates.size());
      if (i == prefix.size()) prefix.push_back(0);
      return prefix[i];
    });
    found.insert(generate_merger(u, oracle));
    prefix.resize(counts.size());
    // Odometer: bump the deepest decision that still has alternatives.
    std::size_t i = counts.size();
    while (i > 0 && prefix[i - 1] + 1 >= counts[i - 1]) --i;
    if (i == 0) break;
    prefix.resize(i);
    ++prefix[i - 1];
  }
  return {found.begin(), found.end()};
}

}  // namespace treesync
