#include "doctest.h"

#include "cohlab/catalog.hpp"
#include "cohlab/constructions/coding.hpp"
#include "cohlab/constructions/pipeline.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/pairing.hpp"
#include "cohlab/verify/checks.hpp"
#include "cohlab/vm/builder.hpp"

using namespace cohlab;
using namespace cohlab::constructions;
namespace progs = cohlab::catalog::programs;

namespace {

sets::Oracle evens_oracle() {
  return sets::Oracle::program(progs::evens(), sets::Oracle::empty_set(), 100000);
}

}  // namespace

TEST_CASE("regularizing the empty set marks every anchor 0") {
  auto reg = regularize(sets::Oracle::empty_set(), {{0, 0}, {1, 1}, {2, 2}});
  REQUIRE(reg.triples.size() == 3);
  CHECK(reg.triples[0] == triple_u64(0, 0, 0));
  CHECK(reg.triples[1] == triple_u64(1, 1, 0));
  CHECK(reg.triples[2] == triple_u64(2, 2, 0));
  for (u64 a = 0; a < 3; ++a) CHECK(*regular_decode(reg, a) == false);
  CHECK(!regular_decode(reg, 9).has_value());
}

TEST_CASE("decode recovers 20 random tables on their anchors") {
  u64 seed = 424242;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<u64> members;
    for (u64 v = 0; v < 24; ++v) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      if (seed >> 63) members.push_back(v);
    }
    auto c = sets::Oracle::from_members(members);
    std::vector<std::pair<u64, u64>> anchors;
    for (u64 n = 0; n < 24; ++n) anchors.push_back({n, n + 1 + trial % 3});
    auto reg = regularize(c, anchors);
    for (u64 n = 0; n < 24; ++n) CHECK(*regular_decode(reg, n) == c.contains(n));
    for (size_t i = 1; i < reg.triples.size(); ++i)
      CHECK(reg.triples[i] > reg.triples[i - 1]);
  }
}

TEST_CASE("non-increasing anchors are rejected") {
  CHECK_THROWS_AS(regularize(sets::Oracle::empty_set(), {{3, 3}, {3, 3}}), Error);
  CHECK_THROWS_AS(regularize(sets::Oracle::empty_set(), {{5, 1}, {1, 1}}), Error);
}

TEST_CASE("coding a single empty set leaves rows zero outside the blocking bits") {
  auto r = spector_code({sets::Oracle::empty_set()}, {0}, 32, 200, 4);
  REQUIRE(r.thresholds.size() == 1);
  for (u64 x = r.thresholds[0]; x < 32; ++x)
    CHECK(spector_row_bit(r, 0, x) == 0);
  // The blocking positions are the only possible nonzero bits.
  for (auto& [pos, bit] : r.decided) {
    if (bit == 0) continue;
    bool from_blocking = false;
    for (const auto& blk : r.blocking_log)
      for (u64 p : blk.positions)
        if (p == pos) from_blocking = true;
    CHECK(from_blocking);
  }
}

TEST_CASE("row readback: the evens land in row 0 above the threshold") {
  auto r = spector_code({evens_oracle(), sets::Oracle::empty_set()}, {0, 8}, 64, 200, 5);
  REQUIRE(r.thresholds.size() == 2);
  CHECK(r.thresholds[0] < 64);
  for (u64 x = r.thresholds[0]; x < 64; ++x)
    CHECK(spector_row_bit(r, 0, x) == (x % 2 == 0 ? 1 : 0));
  for (u64 x = r.thresholds[1]; x < 64; ++x)
    CHECK(spector_row_bit(r, 8, x) == 0);
}

TEST_CASE("blocking choices are maximal over the searched assignments") {
  std::vector<sets::Oracle> sets_coded = {evens_oracle(),
                                          sets::Oracle::from_members({1, 3, 5})};
  auto r = spector_code(sets_coded, {0, 6}, 48, 200, 5);
  auto chk = verify::check_spector(r, sets_coded);
  CHECK(chk.verdict.valid);
}

TEST_CASE("the checker rejects a flipped row bit") {
  std::vector<sets::Oracle> sets_coded = {evens_oracle(), sets::Oracle::empty_set()};
  auto r = spector_code(sets_coded, {0, 8}, 64, 200, 5);
  auto broken = r;
  broken.decided[pair_u64(50, 0)] ^= 1;
  CHECK(!verify::check_spector(broken, sets_coded).verdict.valid);
}

TEST_CASE("the checker rejects a non-maximal blocking claim") {
  std::vector<sets::Oracle> sets_coded = {evens_oracle()};
  auto r = spector_code(sets_coded, {0}, 32, 200, 4);
  auto broken = r;
  REQUIRE(!broken.blocking_log.empty());
  broken.blocking_log[0].chosen_bits.back() ^= 1;
  CHECK(!verify::check_spector(broken, sets_coded).verdict.valid);
}

TEST_CASE("bad row indices are rejected up front") {
  CHECK_THROWS_AS(spector_code({sets::Oracle::empty_set()}, {1}, 16, 100, 3), Error);
  CHECK_THROWS_AS(
      spector_code({sets::Oracle::empty_set(), sets::Oracle::empty_set()}, {0}, 16, 100, 3),
      Error);
}

TEST_CASE("an empty spec list is a one-oracle chain") {
  auto chain = ideal_pipeline(sets::Oracle::empty_set(), {});
  CHECK(chain.completed);
  CHECK(chain.links.empty());
}

TEST_CASE("a non-viable tree aborts the chain with a partial result") {
  PipelineTreeSpec spec;
  {
    vm::ProgramBuilder b(1);  // rejects every string
    b.halt_imm(0);
    spec.tree_program = b.build();
  }
  spec.depth = 4;
  spec.jump_cap = 2000;
  spec.tree_step_budget = 1000;
  spec.inversion.stages = 12;
  auto chain = ideal_pipeline(sets::Oracle::empty_set(), {spec});
  CHECK(!chain.completed);
  CHECK(!chain.abort_reason.empty());
  CHECK(chain.links.empty());
}

TEST_CASE("a one-tree pipeline produces a verifiable link") {
  PipelineTreeSpec spec;
  spec.tree_program = progs::tree_jump_gated(34, 0);
  spec.depth = 5;
  spec.jump_cap = 4000;
  spec.tree_step_budget = 20000;
  spec.formula_step_cap = 400;
  spec.inversion.stages = 20;
  spec.inversion.ext_len_cap = 4;
  spec.inversion.time_cap = 80;
  auto chain = ideal_pipeline(sets::Oracle::empty_set(), {spec});
  REQUIRE(chain.completed);
  REQUIRE(chain.links.size() == 1);
  const auto& link = chain.links[0];
  CHECK(link.path.path_prefix.length() == 5);
  auto frag = coded_fragment(link.inversion);
  REQUIRE(frag.size() >= 5);
  for (size_t k = 0; k < 5; ++k) CHECK(frag[k] == link.path.path_prefix.bit(k));
  // The link's inversion re-validates against the starting top.
  CHECK(verify::check_inversion(link.inversion, sets::Oracle::empty_set()).verdict.valid);
}
