#include "doctest.h"

#include "cohlab/catalog.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/sets/approx_set.hpp"
#include "cohlab/sets/jump.hpp"
#include "cohlab/sets/oracle.hpp"
#include "cohlab/vm/builder.hpp"
#include "cohlab/vm/godel.hpp"

using namespace cohlab;
using namespace cohlab::sets;
namespace progs = cohlab::catalog::programs;

namespace {

Oracle evens_oracle() {
  return Oracle::program(progs::evens(), Oracle::empty_set(), 100000);
}

}  // namespace

TEST_CASE("table oracles honour entries and the default bit") {
  auto o = Oracle::table({{3, true}, {5, false}}, false);
  CHECK(o.contains(3));
  CHECK(!o.contains(5));
  CHECK(!o.contains(7));
  auto co = Oracle::table({{3, false}}, true);
  CHECK(!co.contains(3));
  CHECK(co.contains(100));
}

TEST_CASE("join splits even and odd queries") {
  auto j = Oracle::join(evens_oracle(), Oracle::from_members({1, 2, 3}));
  CHECK(j.contains(0));        // even side: evens(0)
  CHECK(!j.contains(2));       // even side: evens(1)
  CHECK(j.contains(4));        // even side: evens(2)
  CHECK(j.contains(2 * 1 + 1));   // odd side: member 1
  CHECK(j.contains(2 * 3 + 1));   // odd side: member 3
  CHECK(!j.contains(2 * 4 + 1));  // odd side: not a member
}

TEST_CASE("a program oracle that runs out of budget is a hard error") {
  auto slow = Oracle::program(progs::evens(), Oracle::empty_set(), 5);
  CHECK_THROWS_AS(slow.contains(1000), OracleBudgetError);
}

TEST_CASE("jump membership of the tiny halting index") {
  // 34 codes HALT 0, which halts in one step against any oracle.
  Nat e(34);
  CHECK(jump_contains_at(Oracle::empty_set(), e, 36));
  CHECK(jump_contains_at(evens_oracle(), e, 36));
  // Not below its own index: the stage bounds the indices enumerated.
  CHECK(!jump_contains_at(Oracle::empty_set(), e, 30));
}

TEST_CASE("the canonical diverger is never in the jump") {
  Nat dead = vm::encode(vm::canonical_diverger());
  for (u64 stage : {100u, 10000u, 100000u})
    CHECK(!jump_contains_at(Oracle::empty_set(), dead, stage));
}

TEST_CASE("jump stage sets are monotone and never retract") {
  auto js = jump(Oracle::empty_set());
  std::vector<u64> prev;
  for (u64 stage : {10u, 40u, 160u, 640u}) {
    auto cur = js.at_stage(stage);
    for (u64 e : prev) CHECK(std::binary_search(cur.begin(), cur.end(), e));
    prev = cur;
  }
  CHECK(js.contains_at(34, 640));
}

TEST_CASE("decide_halting matches catalog annotations against the evens") {
  struct Annotation {
    Nat index;
    HaltStatus status;
  };
  std::vector<Annotation> annotations = {
      {vm::encode(progs::halt_const(0)), HaltStatus::Halts},
      {vm::encode(progs::halt_const(7)), HaltStatus::Halts},
      {vm::encode(progs::diverger()), HaltStatus::Diverges},
      {vm::encode(progs::growing_loop()), HaltStatus::Unknown},
      {Nat(19), HaltStatus::Diverges},  // JMP 0
      {Nat(34), HaltStatus::Halts},     // HALT 0
      {Nat(51), HaltStatus::Halts},     // HALT 0 with an ignored argument
      {Nat(0), HaltStatus::Diverges},   // invalid: the canonical diverger
      {Nat(1), HaltStatus::Diverges},
      {Nat(7), HaltStatus::Diverges},
      {Nat(2), HaltStatus::Diverges},
      {Nat(3), HaltStatus::Diverges},
  };
  // Arity-0 programs that query the evens oracle and park in a certifiable
  // loop on a 0 answer: membership of the queried constant decides halting.
  for (u64 probe : {0u, 1u, 2u, 4u, 5u, 9u, 12u, 13u}) {
    vm::ProgramBuilder b(0);
    auto div = b.fresh_label();
    b.add_const(0, probe);
    b.query(0);
    b.jz(vm::kFlagOperand, div);
    b.halt_imm(1);
    b.bind(div);
    b.jmp(div);
    annotations.push_back({vm::encode(b.build()),
                           probe % 2 == 0 ? HaltStatus::Halts : HaltStatus::Diverges});
  }
  CHECK(annotations.size() == 20);
  auto evens = evens_oracle();
  for (const auto& a : annotations) {
    auto d = decide_halting(a.index, evens, 100000);
    CHECK(d.status == a.status);
    if (d.status == HaltStatus::Diverges) {
      REQUIRE(d.run.loop.has_value());
      auto p = vm::decode(a.index);
      std::vector<u64> args(p.arity, fits_u64(a.index) ? static_cast<u64>(a.index) : 0);
      CHECK(vm::validate_loop_certificate(p, args, evens.view(), *d.run.loop));
    }
    // Stage-100000 jump membership: in exactly when annotated halting and the
    // index itself is below the stage.
    bool expect = a.status == HaltStatus::Halts && a.index < 100000 &&
                  d.run.steps <= 100000;
    CHECK(jump_contains_at(evens, a.index, 100000) == expect);
  }
}

TEST_CASE("capped jump views answer and memoize; unknowns are errors") {
  auto view = Oracle::capped_jump(Oracle::empty_set(), 2000);
  CHECK(view.contains(34));
  CHECK(!view.contains(19));
  CHECK(view.contains(34));  // memoized path
  Nat growing = vm::encode(progs::growing_loop());
  REQUIRE(fits_u64(growing));
  CHECK_THROWS_AS(view.contains(static_cast<u64>(growing)), UndecidableAtCap);
}

TEST_CASE("enumerated sets respect stage budgets") {
  // Halts exactly on the evens, quickly.
  auto semi = progs::decider_even();
  auto es = enumerated_set(semi, Oracle::empty_set(), 20);
  auto at100 = es.at_stage(100);
  std::vector<u64> expect;
  for (u64 y = 0; y < 20; y += 2) expect.push_back(y);
  CHECK(at100 == expect);
}

TEST_CASE("approximations: grid backing, limits and moduli") {
  // g(x, s): 0 until stage x + 3, then 1.
  auto a = ApproxSet::from_fn([](u64 x, u64 s) { return s >= x + 3 ? 1 : 0; });
  CHECK(a.limit(2, 100, 10) == 1);
  // x = 95 settles at stage 98, inside the final window: too fresh to trust.
  CHECK_THROWS_AS(a.limit(95, 100, 10), Unstable);

  auto with_mod = a.with_modulus_fn([](u64 x) { return x + 3; });
  CHECK(with_mod.limit(98, 100, 10) == 1);
  with_mod.spot_check_modulus({0, 1, 5, 9}, 200);

  auto lying = a.with_modulus(1);
  CHECK_THROWS_AS(lying.spot_check_modulus({5}, 50), Unstable);
}

TEST_CASE("approximation programs are total or error") {
  auto a = ApproxSet::from_program(progs::approx_const(1), Oracle::empty_set(), 100);
  CHECK(a.approx(4, 9) == 1);
}
