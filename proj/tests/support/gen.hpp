#pragma once

// Seeded random instances for property tests. Everything lives on a small
// universe (names a, b, c; depth ≤ 3) so collisions and conflicts are common.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "treesync/canonical.hpp"
#include "treesync/error.hpp"
#include "treesync/filesystem.hpp"
#include "treesync/reconcile.hpp"
#include "support/print.hpp"

namespace treesync::testing {

using Rng = std::mt19937_64;

inline constexpr int kMaxDepth = 3;
inline const char* const kNames[] = {"a", "b", "c"};
inline const char* const kContents[] = {"x", "y", "z"};

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline std::vector<Path> universe() {
  std::vector<Path> out;
  std::vector<Path> level{Path{}};
  for (int d = 1; d <= kMaxDepth; ++d) {
    std::vector<Path> next;
    for (const auto& p : level)
      for (const char* n : kNames) next.push_back(p.child(n));
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Value random_value(Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return Value::empty();
    case 1: return Value::directory();
    default: return Value::file(kContents[std::uniform_int_distribution<int>(0, 2)(rng)]);
  }
}

inline void fill(Rng& rng, Filesystem& fs, const Path& at, double dir_p) {
  if (at.depth() >= static_cast<std::size_t>(kMaxDepth)) return;
  for (const char* n : kNames) {
    const Path p = at.child(n);
    const double r = std::uniform_real_distribution<double>(0, 1)(rng);
    if (r < dir_p) {
      fs.set(p, Value::directory());
      fill(rng, fs, p, dir_p * 0.8);
    } else if (r < dir_p + 0.3) {
      fs.set(p, Value::file(kContents[std::uniform_int_distribution<int>(0, 2)(rng)]));
    }
  }
}

/// A valid random filesystem.
inline Filesystem random_fs(Rng& rng) {
  Filesystem fs;
  fill(rng, fs, Path{}, 0.55);
  return fs;
}

/// One legal single-node change, or a whole-subtree removal. Returns false
/// if the attempt broke the filesystem (fs unchanged).
inline bool random_step(Rng& rng, Filesystem& fs) {
  static const std::vector<Path> all = universe();
  const Path& p = pick(rng, all);
  if (coin(rng, 0.15) && fs.read(p).is_directory()) {
    std::vector<Path> below;
    for (const auto& [q, v] : fs.entries())
      if (p.is_ancestor_of(q)) below.push_back(q);
    for (auto it = below.rbegin(); it != below.rend(); ++it) fs.set(*it, Value::empty());
    fs.set(p, coin(rng, 0.5) ? Value::empty() : Value::file("w"));
    return true;
  }
  const Value v = random_value(rng);
  if (v == fs.read(p)) return false;
  try {
    apply_in_place(fs, Command{p, fs.read(p), v, {}});
    return true;
  } catch (const Error&) {
    return false;
  }
}

/// fs after up to `steps` random legal changes, keeping diff(base, result)
/// within `max_commands`.
inline Filesystem random_edit(Rng& rng, const Filesystem& base, int steps,
                              std::size_t max_commands) {
  Filesystem fs = base;
  for (int i = 0; i < steps; ++i) {
    Filesystem next = fs;
    if (!random_step(rng, next)) continue;
    if (diff(base, next).size() > max_commands) continue;
    fs = std::move(next);
  }
  return fs;
}

struct Family {
  Filesystem fs0;
  std::vector<Filesystem> replicas;
  std::vector<CanonicalSet> sets;
};

/// Jointly refluent by construction: every set is a diff from the same fs0.
inline Family random_family(Rng& rng, int max_replicas = 4, std::size_t max_commands = 12) {
  Family f;
  f.fs0 = random_fs(rng);
  const int k = std::uniform_int_distribution<int>(1, max_replicas)(rng);
  for (int i = 0; i < k; ++i) {
    f.replicas.push_back(
        random_edit(rng, f.fs0, std::uniform_int_distribution<int>(1, 10)(rng), max_commands));
    f.sets.push_back(diff(f.fs0, f.replicas.back()));
  }
  return f;
}

/// Sets drawn against bases that may differ, so refluence sometimes fails.
inline std::vector<CanonicalSet> mixed_family(Rng& rng, int max_sets = 3) {
  const Filesystem fs0 = random_fs(rng);
  const int k = std::uniform_int_distribution<int>(2, max_sets)(rng);
  std::vector<CanonicalSet> out;
  for (int i = 0; i < k; ++i) {
    const Filesystem base = coin(rng, 0.3) ? fs0 : random_edit(rng, fs0, 4, 100);
    out.push_back(
        diff(base, random_edit(rng, base, std::uniform_int_distribution<int>(1, 6)(rng), 8)));
  }
  return out;
}

/// A random canonical set, drawn as the diff of two related filesystems.
inline CanonicalSet random_canonical(Rng& rng, std::size_t max_commands = 12) {
  const Filesystem a = random_fs(rng);
  return diff(a, random_edit(rng, a, std::uniform_int_distribution<int>(1, 10)(rng), max_commands));
}

/// Uniformly random linear extension of ≪ over the set.
inline CommandSequence random_valid_order(Rng& rng, const CanonicalSet& set) {
  const auto& c = set.commands();
  const std::size_t n = c.size();
  std::vector<std::vector<std::size_t>> after(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && must_precede(c[i], c[j])) after[i].push_back(j), ++indegree[j];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  CommandSequence out;
  while (!ready.empty()) {
    const std::size_t at = std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng);
    const std::size_t i = ready[at];
    ready.erase(ready.begin() + at);
    out.push_back(c[i]);
    for (std::size_t j : after[i])
      if (--indegree[j] == 0) ready.push_back(j);
  }
  return out;
}

/// Sample filesystems related to a family: its origin, the replicas, and a
/// few unrelated random ones.
inline std::vector<Filesystem> samples_around(Rng& rng, const Filesystem& base, int extra = 4) {
  std::vector<Filesystem> out{base, Filesystem{}};
  for (int i = 0; i < extra; ++i) out.push_back(random_edit(rng, base, 3, 100));
  for (int i = 0; i < extra; ++i) out.push_back(random_fs(rng));
  return out;
}

}  // namespace treesync::testing
