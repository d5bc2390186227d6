#include "doctest.h"

#include <algorithm>

#include "cohlab/catalog.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/sets/jump.hpp"
#include "cohlab/sets/reduction.hpp"
#include "cohlab/vm/builder.hpp"
#include "cohlab/vm/transform.hpp"

using namespace cohlab;
using namespace cohlab::sets;
namespace progs = cohlab::catalog::programs;

namespace {

Oracle evens_oracle() {
  return Oracle::program(progs::evens(), Oracle::empty_set(), 100000);
}

WttReduction identity_reduction(u64 slack) {
  WttReduction r;
  r.program = progs::membership_tester();
  r.bound_program = progs::bound_linear(slack);
  return r;
}

}  // namespace

TEST_CASE("wtt application: direct query within the bound") {
  auto r = identity_reduction(4);
  auto ans = wtt_apply(r, evens_oracle(), 6);
  CHECK(ans.bit == 1);
  REQUIRE(ans.queries.size() == 1);
  CHECK(ans.queries[0] == 6);
}

TEST_CASE("a bound of 1 forces a violation") {
  WttReduction r;
  r.program = progs::membership_tester();
  r.bound_program = progs::halt_const(1);
  CHECK_THROWS_AS(wtt_apply(r, evens_oracle(), 6), BoundViolation);
}

TEST_CASE("query above the bound is a violation even when steps fit") {
  // The identity reduction under a constant bound: two steps always fit, but
  // inputs at or above the bound query too high a value.
  WttReduction r;
  r.program = progs::membership_tester();
  r.bound_program = progs::halt_const(10);
  CHECK(wtt_apply(r, evens_oracle(), 4).bit == 1);
  CHECK_THROWS_AS(wtt_apply(r, evens_oracle(), 15), BoundViolation);
}

TEST_CASE("composition through identity reductions") {
  auto a = evens_oracle();
  auto composed = compose_reduction(progs::decider_in_oracle(),
                                    progs::decider_out_oracle(),
                                    progs::consumer_member_below(10), a, 32, 4000);
  // B = A, so the composed program enumerates the evens below 10 from A.
  auto direct = enumerated_set(progs::consumer_member_below(10), a, 24);
  auto through = enumerated_set(composed, a, 24);
  CHECK(direct.at_stage(10000) == std::vector<u64>{0, 2, 4, 6, 8});
  CHECK(through.at_stage(20000) == std::vector<u64>{0, 2, 4, 6, 8});
}

TEST_CASE("composition through the evens deciders ignores the outer oracle") {
  // B = evens regardless of A; C = members of B below 10.
  auto a = Oracle::from_members({1, 3, 99});  // arbitrary
  auto composed = compose_reduction(progs::decider_even(), progs::decider_odd(),
                                    progs::consumer_member_below(10), a, 32, 4000);
  auto through = enumerated_set(composed, a, 24);
  CHECK(through.at_stage(40000) == std::vector<u64>{0, 2, 4, 6, 8});
}

TEST_CASE("a consumer with two query sites composes correctly") {
  auto a = Oracle::from_members({3, 4, 5, 9});
  auto composed = compose_reduction(progs::decider_in_oracle(),
                                    progs::decider_out_oracle(),
                                    progs::consumer_adjacent_members(), a, 24, 4000);
  auto through = enumerated_set(composed, a, 16);
  CHECK(through.at_stage(60000) == std::vector<u64>{3, 4});
}

TEST_CASE("composed enumerations are sound and complete at a stage translation") {
  // 20 random triples: a decider pair realizing B from A, and a consumer
  // enumerating from B. Compare against the direct enumeration from the
  // realized B, at a generous stage translation.
  struct DeciderPair {
    vm::Program yes, no;
    bool realized_is_a;  // else the evens, independent of A
  };
  std::vector<DeciderPair> pairs = {
      {progs::decider_in_oracle(), progs::decider_out_oracle(), true},
      {progs::decider_even(), progs::decider_odd(), false},
  };
  std::vector<vm::Program> consumers = {
      progs::consumer_member_below(6),  progs::consumer_member_below(9),
      progs::consumer_member_below(12), progs::consumer_member_below(17),
      progs::consumer_member_below(20), progs::consumer_adjacent_members(),
  };
  std::vector<Oracle> base_oracles = {
      evens_oracle(), Oracle::from_members({0, 1, 2, 3, 4, 8, 13, 14}),
      Oracle::from_members({2, 3, 5, 7, 11, 13, 17, 19})};

  u64 seed = 2024;
  for (int trial = 0; trial < 20; ++trial) {
    seed = seed * 6364136223846793005ull + 1442695040888963407ull;
    const auto& pair = pairs[(seed >> 17) % pairs.size()];
    const auto& consumer = consumers[(seed >> 29) % consumers.size()];
    const auto& a = base_oracles[(seed >> 41) % base_oracles.size()];
    Oracle realized = pair.realized_is_a ? a : evens_oracle();

    auto composed = compose_reduction(pair.yes, pair.no, consumer, a, 24, 4000);
    auto direct = enumerated_set(consumer, realized, 20).at_stage(20000);
    auto through = enumerated_set(composed, a, 20).at_stage(120000);
    // Soundness: nothing extra. Bounded completeness: nothing missing.
    CHECK(through == direct);
  }
}

TEST_CASE("non-complementary decider pairs are rejected") {
  CHECK_THROWS_AS(compose_reduction(progs::decider_even(), progs::decider_even(),
                                    progs::consumer_member_below(4),
                                    Oracle::empty_set(), 16, 2000),
                  Error);
}

TEST_CASE("register conventions are validated") {
  CHECK_THROWS_AS(vm::validate_consumer(progs::adder()), Error);
  CHECK_THROWS_AS(vm::validate_decider(progs::family_bit()), Error);  // arity 2
  CHECK_NOTHROW(vm::validate_decider(progs::membership_tester()));
  // Reading the flag anywhere but right after a QUERY breaks the discipline.
  auto stale = vm::parse_program("ARITY 1\nL0: JZ flag, L0\nHALT 0\n");
  CHECK_THROWS_AS(vm::validate_decider(stale), Error);
  // A jump may not land between a QUERY and its consumer.
  auto landing = vm::parse_program(
      "ARITY 1\nJMP mid\nQUERY r0\nmid: JZ flag, end\nend: HALT 0\n");
  CHECK_THROWS_AS(vm::validate_decider(landing), Error);
}

namespace {

bool sigma1_jump_agrees(const Sigma2Descriptor& d, u64 jump_cap) {
  auto red = post_reduce(d, jump_cap);
  for (u64 x = 0; x < d.x_range(); ++x) {
    if (red.member(x) != d.brute_force_member(x)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("post reduction on the vacuous descriptors") {
  auto always = Sigma2Descriptor::from_program(progs::psi_const(1), Oracle::empty_set(),
                                               1000, 16, 8);
  auto never = Sigma2Descriptor::from_program(progs::psi_const(0), Oracle::empty_set(),
                                              1000, 16, 8);
  auto red_always = post_reduce(always, 200000);
  auto red_never = post_reduce(never, 200000);
  for (u64 x = 0; x < 16; ++x) {
    CHECK(red_always.member(x));
    CHECK(!red_never.member(x));
  }
}

TEST_CASE("post reduction agrees with brute force on y1 >= x") {
  auto d = Sigma2Descriptor::from_program(progs::psi_y1_ge_x_plus(0),
                                          Oracle::empty_set(), 4000, 16, 32);
  CHECK(sigma1_jump_agrees(d, 400000));
}

TEST_CASE("post reduction respects its wtt bound and logs queries") {
  auto d = Sigma2Descriptor::from_program(progs::psi_y2_lt_x(), Oracle::empty_set(),
                                          4000, 16, 8);
  auto red = post_reduce(d, 400000);
  for (u64 x = 0; x < d.x_range(); ++x) {
    auto ans = wtt_apply(red.reduction, red.keyed_jump_view, x);
    u64 bound = red.reduction.bound(x);
    CHECK(ans.steps <= bound);
    for (u64 q : ans.queries) CHECK(q < bound);
  }
}

TEST_CASE("post reduction with an oracle-consulting matrix") {
  auto d = Sigma2Descriptor::from_program(progs::psi_env_y1(), evens_oracle(), 200000,
                                          8, 6);
  CHECK(sigma1_jump_agrees(d, 600000));
}
