#pragma once

#include <span>
#include <vector>

#include "treesync/canonical.hpp"
#include "treesync/filesystem.hpp"
#include "treesync/merge.hpp"

namespace treesync {

/// Per-replica instructions: undo the discarded local commands, then run the
/// merger commands the replica has not executed yet.
struct ReplicaPlan {
  CommandSequence rollback;
  CommandSequence apply;
  std::vector<Command> discarded;  // path order
};

struct SyncPlan {
  CanonicalSet merger;
  std::vector<ReplicaPlan> per_replica;
};

/// Outcome of merging a replica that kept editing (or missed the sync) into
/// an already decided merger M.
struct AsyncOutcome {
  CommandSequence instructions;
  CanonicalSet carried_forward;  // M* ∖ M
  CanonicalSet discarded;        // A′ ∖ M*
  CanonicalSet extended_merger;  // M*
};

/// Commands turning fs_from into fs_to, one per node whose value differs.
/// Visits only nodes stored in either snapshot.
CanonicalSet diff(const Filesystem& fs_from, const Filesystem& fs_to);

/// Throws Error{NotAMerger} unless m ⊆ ∪ sets and every other command of the
/// union conflicts with some command of m.
void require_merger(std::span<const CanonicalSet> sets, const CanonicalSet& m);

/// Validates m, then derives rollback = inverse(order(Aᵢ∖M)) and
/// apply = order(M∖Aᵢ) for every replica.
SyncPlan make_plan(std::span<const CanonicalSet> sets, const CanonicalSet& m);
SyncPlan make_plan(std::span<const CanonicalSet> sets, const Merger& m);

/// a_current is the replica's divergence from the original pre-sync
/// filesystem. Extends m to a merger M* of {a_current, m} containing m.
/// When sets_context is non-empty, m is first validated as its merger.
/// Throws Error{NotRefluent} or Error{NotAMerger}.
AsyncOutcome async_merge(const CanonicalSet& a_current, const CanonicalSet& m,
                         std::span<const CanonicalSet> sets_context = {});

/// Runs every replica through its own commands, its rollback and its apply
/// sequence and checks that all land on order(M)·fs0. False on any breakage.
bool verify_convergence(const Filesystem& fs0, std::span<const CanonicalSet> sets,
                        const SyncPlan& plan);

}  // namespace treesync
