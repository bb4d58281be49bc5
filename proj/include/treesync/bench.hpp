#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "treesync/canonical.hpp"
#include "treesync/filesystem.hpp"
#include "treesync/sorted_union.hpp"

namespace treesync {

enum class BenchAlgorithm { Generate, Greedy };

struct BenchConfig {
  int s = 10;
  int t = 2;
  int users = 2;
  int repeats = 1;
  BenchAlgorithm algorithm = BenchAlgorithm::Generate;
};

/// Throws std::invalid_argument unless 5 ≤ s ≤ 64, 1 ≤ t ≤ (s−1)/2,
/// 2 ≤ users ≤ s−1 and repeats ≥ 1.
void validate(const BenchConfig& cfg);

struct BenchRecord {
  int s = 0;
  int t = 0;
  int users = 0;
  std::size_t total_commands = 0;  // distinct commands in the union
  std::string phase;               // "sort", "merge" or "total"
  int run = 0;
  double elapsed_seconds = 0;
  WorkCounters counters;  // merge phase work; zero for the others
};

/// min(|a−b|, s−|a−b|) for a, b in [0, s).
int circular_distance(int a, int b, int s);

/// Directories /i and /i/j, files /i/j/k, for i, j, k < s where
/// circular_distance(i, j) ≤ t and circular_distance(j, k) ≤ t.
Filesystem gen_initial_fs(int s, int t);

/// User u's edits against gen_initial_fs(s, t): delete the files under each
/// /i/u and then /i/u itself, turn every existing file /i/j/x with
/// x ∈ {u−1, u, u+1} and j ≠ u into a directory, and fill each of those with
/// s new files /i/j/x/l.
CanonicalSet gen_user_changes(int s, int t, int u);

/// gen_user_changes for users 0..cfg.users−1.
std::vector<CanonicalSet> gen_workload(const BenchConfig& cfg);

/// Times the sort phase (building the sorted union) and the merge phase
/// (refluence check and merger generation) `repeats` times; three records
/// per run.
std::vector<BenchRecord> run_bench(const BenchConfig& cfg);

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace treesync
