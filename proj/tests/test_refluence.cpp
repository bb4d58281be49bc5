#include <gtest/gtest.h>

#include <set>

#include "support/gen.hpp"
#include "support/worked.hpp"
#include "treesync/error.hpp"
#include "treesync/refluence.hpp"

using namespace treesync;
using namespace treesync::testing;
using namespace treesync::testing::worked;

namespace {

bool all_apply(std::span<const CanonicalSet> sets, const Filesystem& fs) {
  for (const auto& a : sets) {
    Filesystem copy = fs;
    if (!try_apply_sequence(copy, order_canonical(a))) return false;
  }
  return true;
}

// Brute force over the mentioned nodes and their ancestors; nullopt if the
// closure is too large to search.
std::optional<bool> witness_exists(std::span<const CanonicalSet> sets) {
  std::map<Path, std::set<Value>> options;
  for (const auto& a : sets) {
    for (const auto& c : a) {
      options[c.node].insert(c.input);
      for (Path q = c.node; q.depth() >= 2;) {
        q = q.parent();
        options[q];
      }
    }
  }
  if (options.size() > 7) return std::nullopt;
  std::vector<std::pair<Path, std::vector<Value>>> slots;
  for (auto& [p, vals] : options) {
    vals.insert(Value::empty());
    vals.insert(Value::directory());
    slots.push_back({p, {vals.begin(), vals.end()}});
  }
  std::vector<std::size_t> at(slots.size(), 0);
  while (true) {
    Filesystem fs;
    for (std::size_t i = 0; i < slots.size(); ++i) fs.set(slots[i].first, slots[i].second[at[i]]);
    if (is_valid(fs) && all_apply(sets, fs)) return true;
    std::size_t i = 0;
    while (i < slots.size() && ++at[i] == slots[i].second.size()) at[i++] = 0;
    if (i == slots.size()) return false;
  }
}

}  // namespace

TEST(Refluence, Examples) {
  EXPECT_TRUE(check_jointly_refluent(sets()));
  const std::vector<CanonicalSet> a{set({{P("/n"), D, E, {}}}), set({{P("/n"), F("f"), E, {}}})};
  auto why = refluence_violation(a);
  ASSERT_TRUE(why);
  EXPECT_EQ(why->substr(0, 13), "condition (a)");
  const std::vector<CanonicalSet> d{set({{P("/a"), D, E, {}}}), set({{P("/a/b"), F("f"), E, {}}})};
  why = refluence_violation(d);
  ASSERT_TRUE(why);
  EXPECT_EQ(why->substr(0, 13), "condition (d)");
  EXPECT_EQ(witness_exists(d), false);
}

TEST(Refluence, GapIsConditionB) {
  const std::vector<CanonicalSet> s{set({{P("/a"), D, E, {}}}),
                                    set({{P("/a/b/c"), F("f"), E, {}}})};
  const auto why = refluence_violation(s);
  ASSERT_TRUE(why);
  EXPECT_EQ(why->substr(0, 13), "condition (b)");
}

TEST(Refluence, PairwiseExamples) {
  const auto s = sets();
  EXPECT_TRUE(check_pairwise_refluent(s[0], s[1]));
  EXPECT_TRUE(check_pairwise_refluent(set({{P("/n"), D, E, {}}}), set({{P("/n"), D, F("f"), {}}})));
  EXPECT_FALSE(check_pairwise_refluent(set({{P("/a"), D, E, {}}}), set({{P("/a/b"), F("f"), E, {}}})));
}

TEST(Refluence, Witness) {
  EXPECT_EQ(witness_filesystem(sets()), fs0());
  EXPECT_EQ(witness_filesystem(std::vector<CanonicalSet>{CanonicalSet{}}), Filesystem{});
  const std::vector<CanonicalSet> build{set({{P("/a"), E, D, {}}, {P("/a/b"), E, F("f"), {}}})};
  EXPECT_EQ(witness_filesystem(build), Filesystem{});
  EXPECT_TRUE(all_apply(build, Filesystem{}));
  const std::vector<CanonicalSet> bad{set({{P("/n"), D, E, {}}}), set({{P("/n"), F("f"), E, {}}})};
  EXPECT_THROW(witness_filesystem(bad), Error);
}

TEST(Refluence, Applicability) {
  const CanonicalSet a1 = sets()[0];
  EXPECT_TRUE(check_applicable(a1, fs0()));
  Filesystem extra = fs0();
  extra.set(P("/a/x"), F("g"));
  EXPECT_FALSE(check_applicable(a1, extra));
  EXPECT_TRUE(check_applicable(CanonicalSet{}, extra));
}

TEST(Refluence, RejectsNonCanonicalInput) {
  const std::vector<std::vector<Command>> lists{{{P("/n"), E, E, {}}}};
  try {
    require_canonical_inputs(lists);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCanonicalInput);
  }
}

TEST(RefluenceProperty, PairwiseImpliesJoint) {
  Rng rng(41);
  int hypothesis = 0, rejected = 0;
  for (int i = 0; i < 3000; ++i) {
    const auto family = mixed_family(rng, 4);
    bool pairwise = true;
    for (std::size_t x = 0; x < family.size(); ++x)
      for (std::size_t y = x + 1; y < family.size(); ++y)
        pairwise = pairwise && check_pairwise_refluent(family[x], family[y]);
    const bool joint = check_jointly_refluent(family);
    if (pairwise) {
      ++hypothesis;
      EXPECT_TRUE(joint);
    } else {
      ++rejected;
      EXPECT_FALSE(joint);
    }
  }
  EXPECT_GT(hypothesis, 500);
  EXPECT_GT(rejected, 50);
}

TEST(RefluenceProperty, SoundAndCompleteOnSmallInstances) {
  Rng rng(42);
  int searched = 0;
  for (int i = 0; i < 6000; ++i) {
    const auto family = mixed_family(rng);
    if (check_jointly_refluent(family)) {
      EXPECT_TRUE(all_apply(family, witness_filesystem(family)));
    } else if (auto found = witness_exists(family)) {
      ++searched;
      EXPECT_FALSE(*found);
    }
  }
  EXPECT_GT(searched, 50);
}

TEST(RefluenceProperty, ApplicabilityMatchesSimulation) {
  Rng rng(43);
  int applicable = 0;
  for (int i = 0; i < 3000; ++i) {
    const Filesystem base = random_fs(rng);
    const CanonicalSet a = diff(base, random_edit(rng, base, 6, 12));
    const Filesystem fs = coin(rng, 0.4) ? base : random_edit(rng, base, 2, 100);
    Filesystem sim = fs;
    const bool ok = try_apply_sequence(sim, order_canonical(a));
    applicable += ok;
    EXPECT_EQ(check_applicable(a, fs), ok);
  }
  EXPECT_GT(applicable, 500);
}

TEST(RefluenceProperty, IntersectionIsInitialSegmentOfBoth) {
  Rng rng(44);
  for (int i = 0; i < 1000; ++i) {
    const Family f = random_family(rng, 2);
    if (f.sets.size() < 2) continue;
    const auto common = CanonicalSet::assume_canonical(set_intersection(f.sets[0], f.sets[1]));
    EXPECT_TRUE(is_initial_segment(common, f.sets[0]));
    EXPECT_TRUE(is_initial_segment(common, f.sets[1]));
  }
}

TEST(RefluenceProperty, BitmaskAndCountingAgree) {
  Rng rng(45);
  for (int i = 0; i < 2000; ++i) {
    const auto family = mixed_family(rng, 4);
    const auto u = build_sorted_union(family);
    EXPECT_EQ(refluence_violation(u, IndexSetMode::Bitmask).has_value(),
              refluence_violation(u, IndexSetMode::Counting).has_value());
  }
}

TEST(Refluence, CountingHandlesManyReplicas) {
  Rng rng(46);
  const Filesystem fs0 = random_fs(rng);
  std::vector<CanonicalSet> family;
  for (int i = 0; i < 70; ++i) family.push_back(diff(fs0, random_edit(rng, fs0, 4, 8)));
  EXPECT_TRUE(check_jointly_refluent(family));
  family.push_back(set({{P("/zz"), D, E, {}}}));
  family.push_back(set({{P("/zz/q"), F("f"), E, {}}}));
  EXPECT_FALSE(check_jointly_refluent(family));
}
