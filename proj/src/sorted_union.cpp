#include "treesync/sorted_union.hpp"

#include <algorithm>
#include <numeric>

namespace treesync {

std::vector<Path> SortedUnion::node_paths() const {
  std::vector<Path> out;
  out.reserve(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) out.push_back(node_path(n));
  return out;
}

UpIndex build_node_up_index(const SortedUnion& u) {
  return link_up(u.nodes.size(), [&](std::size_t n) -> const Path& { return u.node_path(n); });
}

SortedUnion build_sorted_union(std::span<const CanonicalSet> sets) {
  std::vector<Command> all;
  std::size_t total = 0;
  for (const auto& s : sets) total += s.size();
  all.reserve(total);
  for (std::uint32_t i = 0; i < sets.size(); ++i) {
    for (const auto& c : sets[i]) {
      all.push_back(c);
      all.back().origin = i;
    }
  }
  std::sort(all.begin(), all.end(), [](const Command& a, const Command& b) {
    if (auto c = compare_identity(a, b); c != 0) return c < 0;
    return a.origin < b.origin;
  });

  // Collapse identical commands; provenance stays in ascending replica order.
  std::vector<Command> dedup;
  std::vector<std::vector<std::uint32_t>> prov;
  for (auto& c : all) {
    if (!dedup.empty() && dedup.back() == c) {
      if (prov.back().back() != *c.origin) prov.back().push_back(*c.origin);
      continue;
    }
    prov.push_back({*c.origin});
    dedup.push_back(std::move(c));
  }

  SortedUnion u;
  u.replica_count = sets.size();
  std::vector<std::size_t> perm(dedup.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t begin = 0;
  while (begin < dedup.size()) {
    std::size_t end = begin + 1;
    while (end < dedup.size() && dedup[end].node == dedup[begin].node) ++end;
    if (end - begin > 1) {
      std::sort(perm.begin() + begin, perm.begin() + end,
                [&](std::size_t a, std::size_t b) { return sort_key_less(dedup[a], dedup[b]); });
    }
    u.nodes.push_back({begin, end});
    begin = end;
  }

  u.commands.reserve(dedup.size());
  u.node_of.reserve(dedup.size());
  u.prov_offsets.reserve(dedup.size() + 1);
  u.prov_offsets.push_back(0);
  for (std::size_t n = 0; n < u.nodes.size(); ++n) {
    for (std::size_t k = u.nodes[n].begin; k < u.nodes[n].end; ++k) {
      u.commands.push_back(std::move(dedup[perm[k]]));
      u.node_of.push_back(n);
      const auto& p = prov[perm[k]];
      u.prov_items.insert(u.prov_items.end(), p.begin(), p.end());
      u.prov_offsets.push_back(static_cast<std::uint32_t>(u.prov_items.size()));
    }
  }
  return u;
}

}  // namespace treesync
