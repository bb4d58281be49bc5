#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "treesync/canonical.hpp"
#include "treesync/sorted_union.hpp"

namespace treesync {

/// A maximal canonical subset of ∪ᵢAᵢ, with the replicas that supplied each
/// command (parallel to commands.commands()).
struct Merger {
  CanonicalSet commands;
  std::vector<std::vector<std::uint32_t>> provenance;

  friend bool operator==(const Merger& a, const Merger& b) { return a.commands == b.commands; }
};

/// The four conflict classes resolved by generate_merger, in pass order.
enum class ConflictClass {
  FileInput = 1,        // different commands on one node holding a file
  ParentChild = 2,      // ⟨parent n, D, EF⟩ against ⟨n, E, FD⟩
  EmptyInput = 3,       // different commands on one empty node
  DirectoryInput = 4,   // different commands on one directory node
};

/// A point where generate_merger needs a choice. For ParentChild the
/// candidates are {keep destructors, keep constructors}; otherwise they are
/// the live commands on the node in sort-key order.
struct DecisionPoint {
  Path node;
  ConflictClass conflict;
  std::vector<std::string> candidates;
};

/// Resolves decision points: first candidate, seeded uniform choice, or a
/// pre-authored script of indices.
class DecisionOracle {
 public:
  /// Called once before each choice (chosen empty) and once after it.
  using Observer =
      std::function<void(const DecisionPoint&, std::optional<std::size_t> chosen)>;
  using Chooser = std::function<std::size_t(const DecisionPoint&)>;

  static DecisionOracle first_wins();
  static DecisionOracle seeded(std::uint64_t seed);
  static DecisionOracle scripted(std::vector<std::size_t> choices);
  /// Arbitrary callback; the returned index must be in range.
  static DecisionOracle custom(Chooser chooser);

  /// Throws Error{ScriptExhausted} / Error{ScriptOutOfRange} in scripted mode.
  std::size_t choose(const DecisionPoint& point);
  /// Scripted mode: throws Error{ScriptOutOfRange} if choices remain unused.
  void finish() const;

  void set_observer(Observer observer) { observer_ = std::move(observer); }

 private:
  enum class Mode { FirstWins, Seeded, Scripted, Custom };
  explicit DecisionOracle(Mode mode) : mode_(mode) {}

  Mode mode_;
  std::mt19937_64 rng_;
  std::vector<std::size_t> script_;
  std::size_t next_ = 0;
  Chooser chooser_;
  Observer observer_;
};

/// Top-down greedy pass: keeps the first surviving command per node and
/// pushes a "delete conflicts down" flag below every kept non-directory
/// output. Throws Error{NotRefluent}.
Merger greedy_merger(std::span<const CanonicalSet> sets, WorkCounters* counters = nullptr);
Merger greedy_merger(const SortedUnion& u, WorkCounters* counters = nullptr);

/// A merger containing the canonical subset `forced` of the union. A first
/// scan deletes everything in conflict with `forced` (downward flags plus
/// upward walks that stop at already-processed nodes), then the greedy pass
/// runs on the survivors. Throws Error{NotRefluent} or
/// Error{NotCanonicalSubset}.
Merger merger_extending(std::span<const CanonicalSet> sets, const CanonicalSet& forced,
                        WorkCounters* counters = nullptr);

/// Four alternating passes resolving conflict classes 1-4; every choice goes
/// through the oracle, so over all oracle behaviours it reaches every merger.
/// Throws Error{NotRefluent} and the oracle's script errors.
Merger generate_merger(std::span<const CanonicalSet> sets, DecisionOracle& oracle,
                       WorkCounters* counters = nullptr);
Merger generate_merger(const SortedUnion& u, DecisionOracle& oracle,
                       WorkCounters* counters = nullptr);

/// Runs generate_merger under every possible script and returns the distinct
/// results sorted by command list. Exponential; small instances only.
std::vector<Merger> explore_generated_mergers(
    std::span<const CanonicalSet> sets,
    std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Conflict graph over the deduplicated union: adjacency per command index of
/// u.commands.
struct ConflictGraph {
  std::vector<std::vector<std::size_t>> adjacency;
  std::size_t edge_count() const;
};
ConflictGraph build_conflict_graph(const SortedUnion& u);

/// Brute-force oracle: every maximal independent set of the conflict graph,
/// as mergers sorted by command list, at most `limit` of them.
/// Throws Error{NotRefluent}.
std::vector<Merger> enumerate_mergers(std::span<const CanonicalSet> sets,
                                      std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Lexicographic order on sorted command lists, by command identity.
bool merger_less(const Merger& a, const Merger& b);

}  // namespace treesync
