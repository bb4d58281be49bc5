#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treesync/canonical.hpp"
#include "treesync/filesystem.hpp"
#include "treesync/sorted_union.hpp"

namespace treesync {

/// How the per-node replica index sets Iₙ are compared. Bitmask needs at most
/// 64 replicas; Counting compares |Iₙ ∩ I_parent| with |Iₙ| and |I_parent|
/// using per-replica up-links and works for any replica count.
enum class IndexSetMode { Auto, Bitmask, Counting };

/// Checks the four node-profile conditions for joint refluence in one
/// top-down pass:
///   (a) all commands on a node share one input value x(n);
///   (b) a profiled node with a profiled ancestor has a profiled parent;
///   (c) x(parent n) ≠ D implies Iₙ ⊆ I_parent;
///   (d) x(n) ≠ E implies I_parent ⊆ Iₙ.
/// Returns the first violation, or nullopt if the sets are jointly refluent.
std::optional<std::string> refluence_violation(const SortedUnion& u,
                                               IndexSetMode mode = IndexSetMode::Auto,
                                               WorkCounters* counters = nullptr);
std::optional<std::string> refluence_violation(std::span<const CanonicalSet> sets,
                                               IndexSetMode mode = IndexSetMode::Auto);

bool check_jointly_refluent(std::span<const CanonicalSet> sets);

/// Validates raw command lists as canonical sets; Error{NotCanonicalInput}
/// names the offending list.
std::vector<CanonicalSet> require_canonical_inputs(std::span<const std::vector<Command>> lists);

/// Two-set characterization (same inputs on shared nodes, no gaps between
/// comparable nodes, D above / E below a node mentioned by only one side).
/// Written independently of refluence_violation and used as its oracle.
bool check_pairwise_refluent(const CanonicalSet& a, const CanonicalSet& b);

/// A filesystem on which every set applies: inputs at mentioned nodes,
/// directories above every non-empty or constructor node, Empty elsewhere.
/// Throws Error{NotRefluent}.
Filesystem witness_filesystem(std::span<const CanonicalSet> sets);

/// Direct applicability test without simulation: inputs match, unmentioned
/// nodes below destructors are Empty, unmentioned nodes above constructors
/// are directories.
bool check_applicable(const CanonicalSet& set, const Filesystem& fs);

}  // namespace treesync
