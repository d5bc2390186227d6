#include "doctest.h"

#include "cohlab/catalog.hpp"
#include "cohlab/constructions/cohesive.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/verify/checks.hpp"

using namespace cohlab;
using namespace cohlab::constructions;
using trees::UniformFamily;

namespace {

// Independent stage simulator: replays the least-admissible-value search with
// plain loops. The expected values frozen below were computed with it.
std::vector<u64> simulate(const UniformFamily& r, const sets::ApproxSet& f, u64 count,
                          u64 bound) {
  std::vector<u64> out;
  u64 prev_plus_1 = 0;
  for (u64 stage = 0; stage < count; ++stage) {
    bool found = false;
    for (u64 s = prev_plus_1; s < bound && !found; ++s) {
      bool ok = true;
      for (u64 k = 0; k < stage && k < r.count(); ++k)
        if (r.member(k, s) != (f.approx(k, s) == 1)) ok = false;
      if (ok) {
        out.push_back(s);
        prev_plus_1 = s + 1;
        found = true;
      }
    }
    if (!found) break;
  }
  return out;
}

UniformFamily bit_family(u64 count) {
  return UniformFamily::from_fn([](u64 k, u64 x) { return (x >> k) & 1; }, count);
}

}  // namespace

TEST_CASE("always-satisfied constraints pick consecutive numbers") {
  auto r = UniformFamily::from_fn([](u64, u64) { return true; }, 4);
  auto f = sets::ApproxSet::from_fn([](u64, u64) { return 1; });
  auto out = cohesive_from_path(r, f, 4, 1000);
  CHECK(out.elements == std::vector<u64>{0, 1, 2, 3});
}

TEST_CASE("bit family under the all-ones pattern: frozen prefix") {
  auto r = bit_family(3);
  auto f = sets::ApproxSet::from_fn([](u64, u64) { return 1; });
  auto out = cohesive_from_path(r, f, 6, 10000);
  // Computed with the independent simulator: stage 0 is unconstrained, then
  // each stage demands one more low bit set.
  CHECK(out.elements == std::vector<u64>{0, 1, 3, 7, 15, 23});
  CHECK(out.elements == simulate(r, f, 6, 10000));
}

TEST_CASE("an impossible settled pattern exhausts the search") {
  auto r = UniformFamily::from_fn([](u64 k, u64 x) { return x % 2 == 0; }, 2);
  // Pattern (1, 0) demands x even and x odd at once.
  auto f = sets::ApproxSet::from_fn([](u64 k, u64) { return k == 0 ? 1 : 0; });
  CHECK_THROWS_AS(cohesive_from_path(r, f, 8, 2000), SearchExhausted);
}

TEST_CASE("construction always matches the independent simulator") {
  auto f_ones = sets::ApproxSet::from_fn([](u64, u64) { return 1; });
  auto f_pat = sets::ApproxSet::from_fn([](u64 k, u64) { return k % 2 == 0 ? 1 : 0; });
  auto f_late = sets::ApproxSet::from_fn([](u64, u64 s) { return s >= 24 ? 1 : 0; });
  struct Case {
    UniformFamily r;
    sets::ApproxSet f;
  };
  std::vector<Case> cases;
  cases.push_back({bit_family(2), f_ones});
  cases.push_back({bit_family(4), f_ones});
  cases.push_back({bit_family(3), f_pat});
  cases.push_back({bit_family(2), f_late});
  cases.push_back(
      {UniformFamily::from_fn([](u64 k, u64 x) { return x % (k + 2) == 0; }, 3), f_ones});
  for (auto& c : cases) {
    auto out = cohesive_from_path(c.r, c.f, 32, 10000);
    CHECK(out.elements == simulate(c.r, c.f, 32, 10000));
    CHECK(out.elements.size() == 32);
    for (size_t i = 1; i < out.elements.size(); ++i)
      CHECK(out.elements[i] > out.elements[i - 1]);
    // The per-stage log records the pattern actually used.
    for (const auto& st : out.per_stage_log)
      CHECK(st.pattern.size() == std::min<u64>(st.stage, c.r.count()));
  }
}

TEST_CASE("checker: evens prefix is cohesive for the evens relation") {
  auto r = UniformFamily::from_fn([](u64, u64 x) { return x % 2 == 0; }, 1);
  std::vector<u64> evens;
  for (u64 i = 0; i < 16; ++i) evens.push_back(2 * i);
  auto chk = verify::check_cohesive(evens, r, 1000);
  CHECK(chk.verdict.valid);
  REQUIRE(chk.thresholds.size() == 1);
  CHECK(chk.thresholds[0].threshold == 0);
  CHECK(chk.thresholds[0].side == 1);
}

TEST_CASE("checker: alternating parity is rejected") {
  auto r = UniformFamily::from_fn([](u64, u64 x) { return x % 2 == 0; }, 1);
  std::vector<u64> alternating = {0, 1, 2, 3, 4, 5, 6, 7};
  auto chk = verify::check_cohesive(alternating, r, 1000);
  CHECK(!chk.verdict.valid);
}

TEST_CASE("checker: construction outputs validate with exact thresholds") {
  auto r = bit_family(3);
  auto f = sets::ApproxSet::from_fn([](u64, u64) { return 1; });
  auto out = cohesive_from_path(r, f, 32, 10000);
  auto chk = verify::check_cohesive(out.elements, r, 10000);
  CHECK(chk.verdict.valid);
  for (const auto& th : chk.thresholds) CHECK(th.side == 1);
  CHECK(verify::check_least_rule(out.elements, r, f).valid);
}

TEST_CASE("least rule catches skipped and wrong choices") {
  auto r = bit_family(2);
  auto f = sets::ApproxSet::from_fn([](u64, u64) { return 1; });
  auto out = cohesive_from_path(r, f, 12, 10000);
  auto tampered = out.elements;
  tampered[3] += 2;  // skips the true least value
  CHECK(!verify::check_least_rule(tampered, r, f).valid);
}
