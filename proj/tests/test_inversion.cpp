#include "doctest.h"

#include "cohlab/catalog.hpp"
#include "cohlab/constructions/inversion.hpp"
#include "cohlab/verify/checks.hpp"

using namespace cohlab;
using namespace cohlab::constructions;
namespace progs = cohlab::catalog::programs;

namespace {

sets::Oracle evens_oracle() {
  return sets::Oracle::program(progs::evens(), sets::Oracle::empty_set(), 100000);
}

InversionBudgets budgets(u64 stages = 70) {
  InversionBudgets b;
  b.stages = stages;
  b.sigma_width_cap = 256;
  b.ext_len_cap = 5;
  b.time_cap = 160;
  return b;
}

}  // namespace

TEST_CASE("coding the empty set gives an all-zero fragment") {
  auto tr = friedberg_invert(sets::Oracle::empty_set(), sets::Oracle::empty_set(),
                             budgets(20));
  auto frag = coded_fragment(tr);
  REQUIRE(frag.size() >= 8);
  for (u8 b : frag) CHECK(b == 0);
}

TEST_CASE("the evens are recovered from the coding blocks") {
  auto tr = friedberg_invert(sets::Oracle::empty_set(), evens_oracle(), budgets());
  auto frag = coded_fragment(tr);
  REQUIRE(frag.size() >= 16);
  for (u64 k = 0; k < 16; ++k) CHECK((frag[k] != 0) == (k % 2 == 0));
}

TEST_CASE("histories are chains and blocks appear verbatim") {
  auto c = sets::Oracle::from_members({1, 2, 3, 5, 8, 13});
  auto tr = friedberg_invert(evens_oracle(), c, budgets());
  std::string prev_sigma, prev_tau;
  for (const auto& st : tr.stages) {
    CHECK(st.sigma_after.substr(0, prev_sigma.size()) == prev_sigma);
    CHECK(st.tau_after.substr(0, prev_tau.size()) == prev_tau);
    if (st.strategy_b && st.success) {
      // sigma_after = previous sigma + found + block
      std::string expect = prev_sigma + st.found_sigma.substr(prev_sigma.size()) +
                           st.c_block;
      CHECK(st.sigma_after == expect);
      for (size_t k = 0; k < st.c_block.size(); ++k)
        CHECK((st.c_block[k] == '1') == c.contains(k));
    }
    prev_sigma = st.sigma_after;
    prev_tau = st.tau_after;
  }
}

TEST_CASE("stage budgets large enough to reach the small halting indices") {
  auto tr = friedberg_invert(sets::Oracle::empty_set(), evens_oracle(), budgets());
  // 34 codes an unconditional halt; the claim string must mark it convergent.
  REQUIRE(tr.tau.size() > 51);
  CHECK(tr.tau[34] == 0);
  CHECK(tr.jump_guess[34] == 1);
  CHECK(tr.tau[51] == 0);  // arity-1 unconditional halt
  CHECK(tr.tau[19] == 1);  // JMP 0 never converges
  CHECK(tr.jump_guess[19] == 0);
  // Convergence claims carry witnesses somewhere in the log.
  bool witness34 = false;
  for (const auto& st : tr.stages)
    for (const auto& w : st.witnesses)
      if (w.e == 34) witness34 = true;
  CHECK(witness34);
}

TEST_CASE("convergence claims replay against their windows") {
  auto tr = friedberg_invert(evens_oracle(), sets::Oracle::empty_set(), budgets());
  u64 replayed = 0;
  for (const auto& st : tr.stages) {
    for (const auto& w : st.witnesses) {
      auto window = trees::BinaryString::from_text(w.window);
      CHECK(index_converges(w.e, evens_oracle(), window, tr.budgets.time_cap));
      ++replayed;
    }
  }
  CHECK(replayed > 0);
}

TEST_CASE("the checker decodes independently and accepts honest transcripts") {
  auto c = sets::Oracle::from_members({0, 3, 4, 7, 9, 10, 14});
  auto a = sets::Oracle::from_members({2, 5, 6});
  auto tr = friedberg_invert(a, c, budgets());
  auto chk = verify::check_inversion(tr, a);
  REQUIRE(chk.verdict.valid);
  REQUIRE(chk.decoded_c.size() >= 16);
  for (u64 k = 0; k < 16; ++k) CHECK((chk.decoded_c[k] != 0) == c.contains(k));
}

TEST_CASE("tampered prefixes and claim bits are caught") {
  auto c = evens_oracle();
  auto a = sets::Oracle::empty_set();
  auto tr = friedberg_invert(a, c, budgets());

  auto bad_prefix = tr;
  auto bits = bad_prefix.b_prefix.bits();
  bits[bits.size() / 2] ^= 1;
  bad_prefix.b_prefix = trees::BinaryString(bits);
  CHECK(!verify::check_inversion(bad_prefix, a).verdict.valid);

  auto bad_tau = tr;
  bad_tau.tau[19] = 0;
  bad_tau.jump_guess[19] = 1;
  CHECK(!verify::check_inversion(bad_tau, a).verdict.valid);
}

TEST_CASE("deterministic: identical runs produce identical transcripts") {
  auto a = evens_oracle();
  auto c = sets::Oracle::from_members({1, 2, 3});
  auto one = friedberg_invert(a, c, budgets(40));
  auto two = friedberg_invert(a, c, budgets(40));
  CHECK(one.b_prefix == two.b_prefix);
  CHECK(one.tau == two.tau);
  CHECK(one.stages.size() == two.stages.size());
}
