#include <gtest/gtest.h>

#include <sstream>

#include "treesync/bench.hpp"
#include "treesync/io.hpp"
#include "treesync/merge.hpp"
#include "treesync/refluence.hpp"

using namespace treesync;

namespace {

std::array<std::size_t, 3> level_counts(const Filesystem& fs) {
  std::array<std::size_t, 3> n{};
  for (const auto& [p, v] : fs.entries()) ++n[p.depth() - 1];
  return n;
}

}  // namespace

TEST(Bench, InitialFilesystemShape) {
  EXPECT_EQ(level_counts(gen_initial_fs(10, 2)), (std::array<std::size_t, 3>{10, 50, 250}));
  EXPECT_EQ(level_counts(gen_initial_fs(5, 1)), (std::array<std::size_t, 3>{5, 15, 45}));
  for (int s = 5; s <= 14; ++s)
    for (int t = 1; t <= (s - 1) / 2; ++t) EXPECT_TRUE(is_valid(gen_initial_fs(s, t)));
}

TEST(Bench, CircularDistance) {
  EXPECT_EQ(circular_distance(0, 9, 10), 1);
  EXPECT_EQ(circular_distance(2, 7, 10), 5);
  EXPECT_EQ(circular_distance(3, 3, 10), 0);
}

TEST(Bench, UserChangeCounts) {
  EXPECT_EQ(gen_user_changes(5, 1, 0).size(), 120u);
  EXPECT_EQ(gen_user_changes(10, 2, 3).size(), 690u);
  std::size_t lo = SIZE_MAX, hi = 0;
  for (int s = 5; s <= 14; ++s) {
    for (int t = 1; t <= (s - 1) / 2; ++t) {
      const std::size_t n = gen_user_changes(s, t, 0).size();
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
  }
  EXPECT_GE(lo, 100u);
  EXPECT_LE(hi, 8000u);
}

TEST(Bench, WorkloadIsRefluentAndApplies) {
  for (auto [s, t, users] : {std::tuple{5, 1, 4}, std::tuple{8, 2, 7}, std::tuple{10, 3, 3}}) {
    const auto sets = gen_workload({s, t, users, 1});
    EXPECT_TRUE(check_jointly_refluent(sets));
    const Filesystem fs = gen_initial_fs(s, t);
    for (const auto& a : sets) {
      Filesystem copy = fs;
      EXPECT_TRUE(try_apply_sequence(copy, order_canonical(a)));
    }
    auto first = DecisionOracle::first_wins();
    const Merger m = generate_merger(sets, first);
    Filesystem merged = fs;
    EXPECT_TRUE(try_apply_sequence(merged, order_canonical(m.commands)));
  }
}

TEST(Bench, Deterministic) {
  std::ostringstream a, b;
  write_commands(a, gen_user_changes(9, 3, 4).commands());
  write_commands(b, gen_user_changes(9, 3, 4).commands());
  EXPECT_EQ(a.str(), b.str());
}

TEST(Bench, RecordsAndCsv) {
  const auto records = run_bench({6, 2, 3, 2});
  ASSERT_EQ(records.size(), 6u);
  for (const auto& r : records) EXPECT_GE(r.elapsed_seconds, 0.0);
  std::ostringstream out;
  write_csv(out, records);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "s,t,users,total_commands,phase,run,elapsed_seconds");
  EXPECT_THROW(validate({4, 1, 2, 1}), std::invalid_argument);
  EXPECT_THROW(validate({10, 5, 2, 1}), std::invalid_argument);
  EXPECT_THROW(validate({10, 2, 10, 1}), std::invalid_argument);
}
