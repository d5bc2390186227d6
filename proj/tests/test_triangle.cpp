#include "doctest.h"

#include <algorithm>

#include "cohlab/constructions/triangle.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/verify/checks.hpp"

using namespace cohlab;
using namespace cohlab::constructions;
using trees::BinaryString;
using trees::TreeSnapshot;
using trees::TruncatedTree;

namespace {

// A staged tree growing along `spine`: the sibling cone at each level stops
// gaining nodes `gap` stages before the spine side does.
TruncatedTree spine_tree(const std::string& spine_text, u64 gap) {
  BinaryString spine = BinaryString::from_text(spine_text);
  u64 depth = spine.length();
  u64 stages = gap * (depth + 2);
  std::vector<TreeSnapshot> snaps;
  for (u64 s = 0; s < stages; ++s) {
    std::vector<u64> codes{1};
    u64 spine_height = std::min<u64>(depth, s / gap + 1);
    for (u64 l = 1; l <= spine_height; ++l) codes.push_back(spine.prefix(l).code());
    for (u64 l = 0; l < depth; ++l) {
      BinaryString sibling = spine.prefix(l).extended(1 - spine.bit(l));
      u64 entered = std::min<u64>(s + 1, l * gap + 1);
      BinaryString node = sibling;
      for (u64 g = 0; g < entered && node.length() <= depth; ++g) {
        codes.push_back(node.code());
        if (node.length() == depth) break;
        node = node.extended(0);
      }
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    snaps.emplace_back(codes, depth);
  }
  auto final_codes = snaps.back().codes();
  return TruncatedTree::from_nodes(final_codes, depth).with_stage_snapshots(snaps);
}

TruncatedTree static_full_tree(u64 depth, u64 stages) {
  std::vector<TreeSnapshot> snaps(stages, TreeSnapshot::full(depth));
  std::vector<u64> codes = snaps.back().codes();
  return TruncatedTree::from_nodes(codes, depth).with_stage_snapshots(snaps);
}

}  // namespace

TEST_CASE("a static tree classifies nothing") {
  auto t = static_full_tree(4, 16);
  auto [a0, a1] = sigma2_from_tree(t);
  for (u64 x = 1; x < a0.x_range(); ++x) {
    CHECK(!a0.brute_force_member(x));
    CHECK(!a1.brute_force_member(x));
  }
}

TEST_CASE("growth only above the zero side lands every spine prefix left") {
  // New nodes enter only along 0^t; each all-zeros prefix has a growing
  // 0-side and a silent 1-side.
  u64 depth = 5;
  std::vector<TreeSnapshot> snaps;
  for (u64 s = 0; s < 10; ++s) {
    std::vector<u64> codes;
    BinaryString cur;
    codes.push_back(cur.code());
    for (u64 l = 0; l < std::min(depth, s + 1); ++l) {
      cur = cur.extended(0);
      codes.push_back(cur.code());
    }
    snaps.emplace_back(codes, depth);
  }
  auto t = TruncatedTree::from_nodes(snaps.back().codes(), depth)
               .with_stage_snapshots(snaps);
  auto [a0, a1] = sigma2_from_tree(t);
  for (u64 l = 0; l + 1 < depth; ++l) {
    u64 code = BinaryString(std::vector<u8>(l, 0)).code();
    CHECK(a0.brute_force_member(code));
    CHECK(!a1.brute_force_member(code));
  }
  // Off the spine nothing ever enters.
  CHECK(!a0.brute_force_member(BinaryString::from_text("1").code()));
  CHECK(!a1.brute_force_member(BinaryString::from_text("1").code()));
}

TEST_CASE("classification sides are disjoint across random staged trees") {
  u64 seed = 7;
  for (int trial = 0; trial < 100; ++trial) {
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    std::string spine;
    for (int i = 0; i < 4; ++i) spine.push_back(((seed >> (13 + i)) & 1) ? '1' : '0');
    auto t = spine_tree(spine, 2 + (seed >> 40) % 3);
    auto [a0, a1] = sigma2_from_tree(t);
    for (u64 x = 1; x < a0.x_range(); ++x) {
      bool in0 = a0.brute_force_member(x);
      bool in1 = a1.brute_force_member(x);
      CHECK(!(in0 && in1));
    }
  }
}

TEST_CASE("constant guesses make constant separators") {
  auto zero = sets::ApproxSet::from_fn([](u64, u64) { return 0; });
  std::vector<u64> c = {3, 7, 11, 19};
  auto d0 = separator_from_cohesive(zero, c, 8);
  for (u64 x = 0; x < 8; ++x) CHECK(d0.limit(x, 100, 4) == 0);

  auto one = sets::ApproxSet::from_fn([](u64, u64) { return 1; });
  auto d1 = separator_from_cohesive(one, c, 8);
  for (u64 x = 0; x < 8; ++x) CHECK(d1.limit(x, 100, 4) == 1);
}

TEST_CASE("separator reads the guess at the last element at or below the stage") {
  // f(x, s) = bit x of s, C = numbers congruent 7 mod 8.
  auto f = sets::ApproxSet::from_fn([](u64 x, u64 s) -> int { return (s >> x) & 1; });
  std::vector<u64> c;
  for (u64 v = 7; v < 80; v += 8) c.push_back(v);
  auto d = separator_from_cohesive(f, c, 3);
  for (u64 x = 0; x < 3; ++x) CHECK(d.limit(x, 100, 1) == 1);
  // At stages below the first element the guess is read at stage 0.
  CHECK(d.approx(0, 3) == f.approx(0, 0));
}

TEST_CASE("non-cohesive element lists are rejected") {
  auto osc = sets::ApproxSet::from_fn([](u64, u64 s) -> int { return s % 2; });
  std::vector<u64> c = {3, 4, 5, 6};
  CHECK_THROWS_AS(separator_from_cohesive(osc, c, 2), NotCohesive);
  std::vector<u64> unsorted = {3, 3};
  CHECK_THROWS_AS(separator_from_cohesive(osc, unsorted, 2), NotCohesive);
}

TEST_CASE("the all-zero separator selects the all-zeros chain") {
  auto d = sets::ApproxSet::from_fn([](u64, u64) { return 0; }).with_modulus(0);
  auto chain = settled_selection_chain(d, 4, 10, 1);
  REQUIRE(chain.size() == 5);
  CHECK(chain[4].text() == "0000");
}

TEST_CASE("a separator holding exactly the all-ones prefixes selects them") {
  auto d = sets::ApproxSet::from_fn([](u64 x, u64) -> int {
             BinaryString s = BinaryString::from_code(x);
             for (size_t i = 0; i < s.length(); ++i)
               if (s.bit(i) != 1) return 0;
             return 1;
           }).with_modulus(0);
  auto chain = settled_selection_chain(d, 4, 10, 1);
  CHECK(chain[4].text() == "1111");
}

TEST_CASE("the path approximation settles to the selection chain") {
  auto d = sets::ApproxSet::from_fn([](u64, u64 s) -> int { return s >= 5 ? 0 : 1; })
               .with_modulus(5);
  auto p = path_from_separator(d, 3);
  REQUIRE(p.has_modulus());
  // After the modulus the member codes are exactly the all-zero prefixes.
  u64 m = *p.modulus_at(0);
  for (u64 code = 1; code < 16; ++code) {
    BinaryString s = BinaryString::from_code(code);
    bool all0 = true;
    for (size_t i = 0; i < s.length(); ++i)
      if (s.bit(i)) all0 = false;
    CHECK((p.approx(code, m + 3) == 1) == (all0 && s.length() <= 3));
  }
}

TEST_CASE("separator checker: inclusion on one side, exclusion on the other") {
  auto empty_side = sets::Sigma2Descriptor::from_fn(
      [](u64, u64, u64) { return false; }, 16, 4);
  auto all_side = sets::Sigma2Descriptor::from_fn(
      [](u64, u64, u64) { return true; }, 16, 4);
  auto evens_side = sets::Sigma2Descriptor::from_fn(
      [](u64 x, u64, u64) { return x % 2 == 0; }, 16, 4);
  auto d0 = sets::ApproxSet::from_fn([](u64, u64) { return 0; }).with_modulus(0);

  // first = empty, second = everything, D = 0: valid.
  CHECK(verify::check_separator(d0, empty_side, all_side, 16, 10, 1).valid);
  // first = evens, D = 0: the inclusion fails.
  CHECK(!verify::check_separator(d0, evens_side, empty_side, 16, 10, 1).valid);
  // D = evens separates evens from its complement.
  auto dev = sets::ApproxSet::from_fn([](u64 x, u64) -> int { return x % 2 == 0; })
                 .with_modulus(0);
  auto odds_side = sets::Sigma2Descriptor::from_fn(
      [](u64 x, u64, u64) { return x % 2 == 1; }, 16, 4);
  CHECK(verify::check_separator(dev, evens_side, odds_side, 16, 10, 1).valid);
}

TEST_CASE("roundtrip separators validate against the classification sides") {
  auto t = spine_tree("0101", 3);
  auto [a0, a1] = sigma2_from_tree(t);
  auto f = separation_guess(a1, a0);
  auto fpath = stable_membership_approx(a1, a0);
  u64 code_space = u64{2} << t.depth();
  auto fam = derived_family(f, code_space);
  auto c = cohesive_from_path(fam, fpath, code_space + 8, 4000);
  auto d = separator_from_cohesive(f, c.elements, code_space);
  CHECK(verify::check_separator(d, a1, a0, code_space, c.elements.back(), 1).valid);
}

TEST_CASE("roundtrip: the spine trees select their spines") {
  for (const char* spine : {"0000", "1111", "0101", "1010", "0110"}) {
    auto t = spine_tree(spine, 3);
    auto rt = verify::roundtrip_triangle(t, verify::TriangleBudgets{4000, 8});
    REQUIRE(rt.verdict.valid);
    CHECK(rt.chain.back().text() == spine);
  }
}

TEST_CASE("roundtrip: static full tree is degenerate but valid") {
  auto t = static_full_tree(4, 12);
  auto rt = verify::roundtrip_triangle(t, verify::TriangleBudgets{4000, 8});
  CHECK(rt.verdict.valid);
}

TEST_CASE("a tampered separator breaks the roundtrip path") {
  auto t = spine_tree("0110", 3);
  auto rt = verify::roundtrip_triangle(t, verify::TriangleBudgets{4000, 8});
  REQUIRE(rt.verdict.valid);
  auto broken = rt.chain;
  // Send the length-1 selection the wrong way: the chain property breaks.
  auto bits = broken[1].bits();
  bits[0] ^= 1;
  broken[1] = BinaryString(bits);
  const TreeSnapshot& settled = t.stage(t.stage_count() - 1);
  CHECK(!verify::check_path(broken, settled).valid);
}
