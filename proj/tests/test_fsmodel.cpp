#include <gtest/gtest.h>

#include "support/gen.hpp"
#include "support/worked.hpp"
#include "treesync/error.hpp"
#include "treesync/filesystem.hpp"

using namespace treesync;
using namespace treesync::testing;
using namespace treesync::testing::worked;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(Path, ParseAndRender) {
  EXPECT_EQ(P("/").str(), "/");
  EXPECT_TRUE(P("/").is_root());
  EXPECT_EQ(P("/a/b").str(), "/a/b");
  EXPECT_EQ(P("/a/b").parent(), P("/a"));
  EXPECT_EQ(P("/a").parent(), P("/"));
  EXPECT_THROW(Path::parse("a/b"), std::invalid_argument);
  EXPECT_THROW(Path::parse("/a//b"), std::invalid_argument);
}

TEST(Path, AncestorsSortFirstEvenWithSharedPrefixes) {
  // Whole-string comparison would put "/a-b" between "/a" and "/a/b".
  EXPECT_LT(P("/a"), P("/a/b"));
  EXPECT_LT(P("/a/b"), P("/a-b"));
  EXPECT_LT(P("/a/z/z"), P("/ab"));
  EXPECT_TRUE(P("/a").is_ancestor_of(P("/a/b/c")));
  EXPECT_FALSE(P("/a").is_ancestor_of(P("/a")));
  EXPECT_TRUE(P("/a").is_parent_of(P("/a/b")));
  EXPECT_FALSE(P("/a").is_parent_of(P("/a/b/c")));
  EXPECT_FALSE(P("/a/b").comparable(P("/a/c")));
}

TEST(Value, TypeOrder) {
  EXPECT_LT(Value::empty().type(), Value::file("x").type());
  EXPECT_LT(Value::file("x").type(), Value::directory().type());
  EXPECT_NE(Value::file("x"), Value::file("y"));
  EXPECT_EQ(Value::file("x"), Value::file("x"));
}

TEST(Filesystem, Read) {
  const Filesystem fs = fs0();
  EXPECT_EQ(fs.read(P("/a/b/c")), F("f_o"));
  EXPECT_EQ(fs.read(P("/a/z")), E);
  EXPECT_EQ(Filesystem{}.read(P("/")), E);
}

TEST(Filesystem, Validity) {
  Filesystem ok;
  ok.set(P("/a"), D);
  ok.set(P("/a/b"), F("f"));
  EXPECT_TRUE(is_valid(ok));
  Filesystem orphan;
  orphan.set(P("/a/b"), F("f"));
  EXPECT_FALSE(is_valid(orphan));
  EXPECT_TRUE(is_valid(Filesystem{}));
}

TEST(Filesystem, ApplyCommand) {
  Filesystem expected;
  expected.set(P("/a"), D);
  expected.set(P("/a/b"), D);
  EXPECT_EQ(apply_command(fs0(), sigma1), expected);
  EXPECT_EQ(kind_of([] { apply_command(fs0(), sigma3); }), ErrorKind::TreeBroken);
  EXPECT_EQ(kind_of([] { apply_command(fs0(), Command{P("/a/b/c"), E, F("f"), {}}); }),
            ErrorKind::PreconditionFailed);
  EXPECT_EQ(kind_of([] { apply_command(Filesystem{}, Command{P("/"), E, D, {}}); }),
            ErrorKind::TreeBroken);
}

TEST(Filesystem, ApplySequence) {
  EXPECT_EQ(apply_sequence(fs0(), CommandSequence{sigma1, sigma2, sigma3}), Filesystem{});
  EXPECT_EQ(apply_sequence(fs0(), CommandSequence{}), fs0());
  const Command make{P("/a/q"), E, F("f"), {}};
  EXPECT_EQ(apply_sequence(fs0(), CommandSequence{make, inverse(make)}), fs0());
}

TEST(Filesystem, SequenceErrorCarriesPosition) {
  try {
    apply_sequence(fs0(), CommandSequence{sigma1, sigma3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TreeBroken);
    ASSERT_TRUE(e.position());
    EXPECT_EQ(*e.position(), 1u);
  }
}

TEST(FilesystemProperty, InverseRollsBack) {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const Filesystem fs = random_fs(rng);
    CommandSequence seq;
    Filesystem cur = fs;
    for (int k = 0; k < 8; ++k) {
      Filesystem next = cur;
      if (!random_step(rng, next)) continue;
      for (const auto& c : order_canonical(diff(cur, next))) seq.push_back(c);
      cur = next;
    }
    Filesystem fwd = fs;
    ASSERT_TRUE(try_apply_sequence(fwd, seq));
    Filesystem back = fwd;
    ASSERT_TRUE(try_apply_sequence(back, inverse(seq)));
    EXPECT_EQ(back, fs);
  }
}

TEST(FilesystemProperty, SingleCommandTouchesOneNodeAndKeepsValidity) {
  Rng rng(12);
  const auto all = universe();
  for (int i = 0; i < 2000; ++i) {
    const Filesystem fs = random_fs(rng);
    const Command c{pick(rng, all), random_value(rng), random_value(rng), {}};
    Filesystem out = fs;
    try {
      apply_in_place(out, c);
    } catch (const Error&) {
      EXPECT_EQ(out, fs);
      continue;
    }
    EXPECT_TRUE(is_valid(out));
    for (const auto& p : all)
      if (!(p == c.node)) EXPECT_EQ(out.read(p), fs.read(p));
  }
}
