#include <algorithm>

#include <boost/dynamic_bitset.hpp>

#include "treesync/error.hpp"
#include "treesync/merge.hpp"
#include "treesync/refluence.hpp"

namespace treesync {

std::size_t ConflictGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& a : adjacency) twice += a.size();
  return twice / 2;
}

ConflictGraph build_conflict_graph(const SortedUnion& u) {
  ConflictGraph g;
  g.adjacency.resize(u.commands.size());
  for (std::size_t i = 0; i < u.commands.size(); ++i) {
    for (std::size_t j = i + 1; j < u.commands.size(); ++j) {
      if (conflicts(u.commands[i], u.commands[j])) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  }
  return g;
}

namespace {

using Bits = boost::dynamic_bitset<>;

// Bron-Kerbosch with pivoting on the complement of the conflict graph, so the
// maximal cliques it reports are the maximal conflict-free subsets.
class MaximalSets {
 public:
  MaximalSets(const ConflictGraph& g, std::size_t limit) : limit_(limit) {
    const std::size_t n = g.adjacency.size();
    compatible_.assign(n, Bits(n));
    for (std::size_t v = 0; v < n; ++v) {
      compatible_[v].set();
      compatible_[v].reset(v);
      for (std::size_t w : g.adjacency[v]) compatible_[v].reset(w);
    }
  }

  std::vector<Bits> run() {
    const std::size_t n = compatible_.size();
    Bits p(n), x(n), r(n);
    p.set();
    expand(r, p, x);
    return std::move(found_);
  }

 private:
  void expand(Bits& r, Bits p, Bits x) {
    if (found_.size() >= limit_) return;
    if (p.none()) {
      if (x.none()) found_.push_back(r);
      return;
    }
    const Bits px = p | x;
    std::size_t pivot = px.find_first();
    std::size_t best = 0;
    for (std::size_t u = px.find_first(); u != Bits::npos; u = px.find_next(u)) {
      const std::size_t c = (p & compatible_[u]).count();
      if (c > best) best = c, pivot = u;
    }
    const Bits todo = p - compatible_[pivot];
    for (std::size_t v = todo.find_first(); v != Bits::npos; v = todo.find_next(v)) {
      r.set(v);
      expand(r, p & compatible_[v], x & compatible_[v]);
      r.reset(v);
      p.reset(v);
      x.set(v);
    }
  }

  std::size_t limit_;
  std::vector<Bits> compatible_;
  std::vector<Bits> found_;
};

}  // namespace

std::vector<Merger> enumerate_mergers(std::span<const CanonicalSet> sets, std::size_t limit) {
  const SortedUnion u = build_sorted_union(sets);
  if (auto why = refluence_violation(u)) throw Error(ErrorKind::NotRefluent, *why);

  std::vector<Merger> out;
  if (u.commands.empty()) {
    out.emplace_back();
    return out;
  }
  for (const Bits& chosen : MaximalSets(build_conflict_graph(u), limit).run()) {
    std::vector<Command> cmds;
    Merger m;
    for (std::size_t k = chosen.find_first(); k != Bits::npos; k = chosen.find_next(k)) {
      cmds.push_back(u.commands[k]);
      auto prov = u.provenance(k);
      m.provenance.emplace_back(prov.begin(), prov.end());
    }
    m.commands = CanonicalSet::assume_canonical(std::move(cmds));
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), merger_less);
  return out;
}

}  // namespace treesync
