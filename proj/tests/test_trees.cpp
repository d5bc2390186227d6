#include "doctest.h"

#include <set>

#include "cohlab/catalog.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/trees/binary_string.hpp"
#include "cohlab/trees/family.hpp"
#include "cohlab/trees/tree.hpp"

using namespace cohlab;
using namespace cohlab::trees;
namespace progs = cohlab::catalog::programs;

TEST_CASE("binary string codes round-trip and order correctly") {
  CHECK(BinaryString().code() == 1);
  CHECK(BinaryString::from_text("0").code() == 2);
  CHECK(BinaryString::from_text("1").code() == 3);
  CHECK(BinaryString::from_text("01").code() == 5);
  for (u64 c = 1; c < 512; ++c) CHECK(BinaryString::from_code(c).code() == c);
  CHECK(BinaryString::lex_less(BinaryString::from_text("0"), BinaryString::from_text("1")));
  CHECK(BinaryString::from_text("01").is_prefix_of(BinaryString::from_text("0110")));
  CHECK(!BinaryString::from_text("11").is_prefix_of(BinaryString::from_text("10")));
}

TEST_CASE("a full tree of depth 3 has 15 nodes") {
  auto t = TruncatedTree::from_predicate([](const BinaryString&) { return true; }, 3);
  auto snap = t.materialize();
  CHECK(snap.node_count() == 15);
  CHECK(snap.viable());
}

TEST_CASE("no-two-consecutive-ones node count matches brute force") {
  auto no11 = [](const BinaryString& s) {
    for (size_t i = 1; i < s.length(); ++i)
      if (s.bit(i - 1) == 1 && s.bit(i) == 1) return false;
    return true;
  };
  auto t = TruncatedTree::from_predicate(no11, 3);
  auto snap = t.materialize();
  // Brute force over all strings of length <= 3.
  u64 expect = 0;
  for (u64 c = 1; c < 16; ++c)
    if (no11(BinaryString::from_code(c))) ++expect;
  CHECK(snap.node_count() == expect);
}

TEST_CASE("closure violations name the missing parent") {
  auto accepts_01_not_0 = [](const BinaryString& s) {
    if (s.length() == 0) return true;
    return s.text() == "01";
  };
  auto t = TruncatedTree::from_predicate(accepts_01_not_0, 3);
  try {
    t.materialize();
    FAIL("expected NotATree");
  } catch (const NotATree& e) {
    CHECK(e.offending() == "0");
  }
}

TEST_CASE("viability is reaching the truncation depth") {
  auto full = TruncatedTree::from_predicate([](const BinaryString&) { return true; }, 4);
  CHECK(viable(full));
  auto empty_above_root =
      TruncatedTree::from_predicate([](const BinaryString& s) { return s.length() == 0; }, 4);
  CHECK(!viable(empty_above_root));
  auto single_path = TruncatedTree::from_predicate(
      [](const BinaryString& s) {
        for (size_t i = 0; i < s.length(); ++i)
          if (s.bit(i) != 0) return false;
        return true;
      },
      8);
  CHECK(viable(single_path));
}

TEST_CASE("leftmost viable extension prefers 0 and respects dead ends") {
  auto full = TruncatedTree::from_predicate([](const BinaryString&) { return true; }, 3)
                  .materialize();
  CHECK(full.leftmost_viable_extension(BinaryString()).text() == "0");

  auto ones_only = TruncatedTree::from_predicate(
                       [](const BinaryString& s) {
                         for (size_t i = 0; i < s.length(); ++i)
                           if (s.bit(i) != 1) return false;
                         return true;
                       },
                       3)
                       .materialize();
  CHECK(ones_only.leftmost_viable_extension(BinaryString()).text() == "1");
  CHECK(ones_only.leftmost_path().text() == "111");
  CHECK_THROWS_AS(full.leftmost_viable_extension(BinaryString::from_text("000")),
                  DeadEnd);
}

TEST_CASE("returned branches are viable; 0 is skipped only when dead") {
  // A tree with assorted pruned cones.
  auto pred = [](const BinaryString& s) {
    // Prune everything above "00" and above "11".
    if (BinaryString::from_text("00").is_prefix_of(s) && s.length() > 2) return false;
    if (BinaryString::from_text("11").is_prefix_of(s) && s.length() > 2) return false;
    return true;
  };
  auto snap = TruncatedTree::from_predicate(pred, 5).materialize();
  for (u64 c : snap.codes()) {
    BinaryString s = BinaryString::from_code(c);
    if (s.length() >= snap.depth() || !snap.viable_above(s)) continue;
    BinaryString ext = snap.leftmost_viable_extension(s);
    CHECK(snap.viable_above(ext));
    if (ext.bit(ext.length() - 1) == 1) {
      BinaryString zero = s.extended(0);
      CHECK(!snap.viable_above(zero));
    }
  }
}

TEST_CASE("tree_from_family: empty pattern is the full tree") {
  auto r = UniformFamily::from_fn([](u64, u64) { return true; }, 0);
  auto t = tree_from_family(r, 64, 4);
  CHECK(t.materialize().node_count() == 31);
}

TEST_CASE("tree_from_family: bit patterns below 256 fill depth 3") {
  auto r = UniformFamily::from_fn([](u64 k, u64 x) { return (x >> k) & 1; }, 3);
  auto t = tree_from_family(r, 256, 3);
  auto snap = t.materialize();
  // Every 3-bit pattern has 32 > 3 witnesses below 256.
  CHECK(snap.node_count() == 15);
}

TEST_CASE("tree_from_family: no witnesses, no node") {
  auto r = UniformFamily::from_fn([](u64, u64) { return false; }, 1);
  auto t = tree_from_family(r, 64, 2);
  auto snap = t.materialize();
  CHECK(!snap.contains(BinaryString::from_text("1")));
  CHECK(snap.contains(BinaryString::from_text("0")));
}

TEST_CASE("tree_from_family is monotone in the witness bound") {
  auto r = UniformFamily::from_fn(
      [](u64 k, u64 x) { return ((x * 2654435761u) >> k) & 1; }, 4);
  auto small = tree_from_family(r, 64, 4).materialize();
  auto large = tree_from_family(r, 192, 4).materialize();
  for (u64 c : small.codes()) CHECK(large.contains(c));
}

TEST_CASE("every viable tree yields a path whose prefixes are members") {
  auto r = UniformFamily::from_fn([](u64 k, u64 x) { return (x >> k) & 1; }, 4);
  auto snap = tree_from_family(r, 512, 4).materialize();
  REQUIRE(snap.viable());
  BinaryString path = snap.leftmost_path();
  for (size_t l = 0; l <= path.length(); ++l) CHECK(snap.contains(path.prefix(l)));
}

TEST_CASE("path approximations from families settle to the leftmost path") {
  auto r = UniformFamily::from_fn([](u64 k, u64 x) { return (x >> k) & 1; }, 3);
  auto f = trees::path_approx_from_family(r, 256, 3);
  auto snap = tree_from_family(r, 256, 3).materialize();
  BinaryString leftmost = snap.leftmost_path();
  for (u64 k = 0; k < 3; ++k)
    CHECK(f.approx(k, 256) == leftmost.bit(k));
  REQUIRE(f.has_modulus());
  f.spot_check_modulus({0, 1, 2}, 400);
}

TEST_CASE("program-backed trees run against their oracle") {
  auto t = TruncatedTree::from_program(progs::tree_max_ones(1),
                                       sets::Oracle::empty_set(), 100000, 5);
  auto snap = t.materialize();
  for (u64 c : snap.codes()) {
    BinaryString s = BinaryString::from_code(c);
    u64 ones = 0;
    for (size_t i = 0; i < s.length(); ++i) ones += s.bit(i);
    CHECK(ones <= 1);
  }
  CHECK(snap.viable());
}
