#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "treesync/canonical.hpp"
#include "treesync/command.hpp"

namespace treesync {

/// Instrumentation for the linear-work claims of the merge passes.
struct WorkCounters {
  std::size_t link_steps = 0;    // up-link candidates examined
  std::size_t flag_writes = 0;   // per-node flags set
  std::size_t upward_steps = 0;  // nodes visited by upward deletion walks
  std::size_t deletions = 0;     // commands removed from the candidate pool
  std::size_t decisions = 0;     // decision points routed to an oracle

  WorkCounters& operator+=(const WorkCounters& o) {
    link_steps += o.link_steps;
    flag_writes += o.flag_writes;
    upward_steps += o.upward_steps;
    deletions += o.deletions;
    decisions += o.decisions;
    return *this;
  }
};

/// ∪ᵢAᵢ prepared for the linear passes: identical commands from different
/// replicas collapse to one entry with merged provenance, entries are grouped
/// by node in path order, and within a node they follow sort_key_less
/// (lowest contributing replica first).
struct SortedUnion {
  struct NodeRange {
    std::size_t begin;
    std::size_t end;
  };

  /// origin is set to the lowest contributing replica index.
  std::vector<Command> commands;
  /// Per node, in path order: [begin, end) into `commands`.
  std::vector<NodeRange> nodes;
  /// Node index of every command.
  std::vector<std::size_t> node_of;
  std::size_t replica_count = 0;

  std::span<const std::uint32_t> provenance(std::size_t command) const {
    return {prov_items.data() + prov_offsets[command],
            prov_items.data() + prov_offsets[command + 1]};
  }
  const Path& node_path(std::size_t node) const { return commands[nodes[node].begin].node; }
  std::vector<Path> node_paths() const;

  std::vector<std::uint32_t> prov_offsets;
  std::vector<std::uint32_t> prov_items;
};

SortedUnion build_sorted_union(std::span<const CanonicalSet> sets);

/// Up-links between the distinct nodes of u.
UpIndex build_node_up_index(const SortedUnion& u);

}  // namespace treesync
