#include "doctest.h"

#include "cohlab/catalog.hpp"
#include "cohlab/constructions/superlow.hpp"
#include "cohlab/constructions/generic_path.hpp"
#include "cohlab/verify/checks.hpp"

using namespace cohlab;
using namespace cohlab::constructions;
using trees::BinaryString;
using trees::TruncatedTree;
namespace progs = cohlab::catalog::programs;

namespace {

TruncatedTree full_tree(u64 depth) {
  return TruncatedTree::from_predicate([](const BinaryString&) { return true; }, depth);
}

sets::Oracle empty_o() { return sets::Oracle::empty_set(); }

}  // namespace

TEST_CASE("no formulas: leftmost path, empty table, zero queries") {
  auto tr = superlow_basis(full_tree(6), {}, empty_o(), 1000);
  CHECK(tr.path_prefix.text() == "000000");
  CHECK(tr.jump_table.empty());
  CHECK(tr.queries.empty());
}

TEST_CASE("a divergence class viable through the zero branch is kept") {
  // Converges only when path bit 0 is 1, so its divergence class holds the
  // whole 0-side; forcing keeps it and the path starts with 0.
  auto tr = superlow_basis(full_tree(5), {progs::formula_path_bit_is(0, 1)}, empty_o(),
                           500);
  REQUIRE(tr.jump_table.size() == 1);
  CHECK(tr.jump_table[0] == 0);
  CHECK(tr.path_prefix.bit(0) == 0);
  // Independent viability check of the intersection.
  auto snap = full_tree(5).materialize();
  auto inter = snap.filtered([&](const BinaryString& s) {
    return !formula_converges(progs::formula_path_bit_is(0, 1), empty_o(), s, 500);
  });
  CHECK(inter.viable());
}

TEST_CASE("an everywhere-converging formula forces jump bit 1") {
  auto tr = superlow_basis(full_tree(5), {progs::formula_halt()}, empty_o(), 500);
  REQUIRE(tr.jump_table.size() == 1);
  CHECK(tr.jump_table[0] == 1);
}

TEST_CASE("forcing against a non-full tree respects prior constraints") {
  // In the at-most-one-one tree, demanding path bit 0 = 0 keeps the
  // divergence class of "halt iff bit 0 is 1".
  auto t = TruncatedTree::from_program(progs::tree_max_ones(1), empty_o(), 100000, 8);
  std::vector<vm::Program> formulas = {progs::formula_path_bit_is(0, 0),
                                       progs::formula_diverge(),
                                       progs::formula_path_bit_is(3, 1)};
  auto tr = superlow_basis(t, formulas, empty_o(), 2000);
  auto snap = t.materialize();
  for (size_t l = 0; l <= tr.path_prefix.length(); ++l)
    CHECK(snap.contains(tr.path_prefix.prefix(l)));
  // "halt iff bit 0 = 0" converges on the leftmost side; its divergence
  // class is the 1-side, which is viable here, so the path starts with 1.
  CHECK(tr.path_prefix.bit(0) == 1);
  CHECK(tr.jump_table[0] == 0);
  // formula_diverge never converges: divergence class is everything.
  CHECK(tr.jump_table[1] == 0);
}

TEST_CASE("query count stays within the predetermined bound") {
  std::vector<vm::Program> formulas = {
      progs::formula_path_bit_is(0, 1), progs::formula_halt(),
      progs::formula_diverge(),         progs::formula_path_bit_is(2, 0),
      progs::formula_base_bit_is(1, 1), progs::formula_path_bit_is(4, 1)};
  auto tr = superlow_basis(full_tree(8), formulas, empty_o(), 2000);
  CHECK(tr.queries.size() == formulas.size());
  CHECK(tr.queries.size() <= (u64{1} << formulas.size()));
}

TEST_CASE("checker accepts honest transcripts and rejects tampering") {
  auto t = full_tree(6);
  std::vector<vm::Program> formulas = {progs::formula_path_bit_is(0, 1),
                                       progs::formula_halt(),
                                       progs::formula_diverge()};
  auto tr = superlow_basis(t, formulas, empty_o(), 1000);
  std::vector<u64> annotated = {0, 1, 2};
  auto good = verify::check_superlow(tr, t, formulas, empty_o(), annotated);
  CHECK(good.verdict.valid);

  auto tampered = tr;
  tampered.jump_table[0] ^= 1;
  auto bad = verify::check_superlow(tampered, t, formulas, empty_o(), annotated);
  CHECK(!bad.verdict.valid);

  auto off_tree = tr;
  auto bits = off_tree.path_prefix.bits();
  bits.pop_back();
  off_tree.path_prefix = BinaryString(bits);
  CHECK(!verify::check_superlow(off_tree, t, formulas, empty_o(), annotated)
             .verdict.valid);
}

TEST_CASE("generic path forcing with no formulas is the leftmost path") {
  auto r = simpson_smith_path(full_tree(6), {}, empty_o(), 500);
  CHECK(r.path_prefix.text() == "000000");
}

TEST_CASE("generic path forcing honours each retained class") {
  // One formula asked about argument 0: halt iff path bit arg*2+1... the
  // catalog formula queries the path bit at its argument.
  std::vector<PathForcingFormula> formulas = {
      {progs::formula_arg_path_bit_is(1), 0},
      {progs::formula_arg_path_bit_is(1), 2}};
  auto r = simpson_smith_path(full_tree(6), formulas, empty_o(), 2000);
  REQUIRE(r.decisions.size() == 2);
  // Divergence classes (bit != 1) are viable, so both are kept and force 0s.
  CHECK(r.decisions[0].intersected);
  CHECK(r.path_prefix.bit(0) == 0);
  CHECK(r.path_prefix.bit(2) == 0);
  // The final prefix lies in every retained class: replay the memberships.
  for (const auto& d : r.decisions) {
    if (!d.intersected) continue;
    u64 args[1] = {d.argument};
    vm::WindowView w(r.path_prefix.bits());
    vm::JoinView join(empty_o().view(), w);
    CHECK(!vm::run(progs::formula_arg_path_bit_is(1), args, join, 2000).halted());
  }
  // The prefix grows by at least one per formula.
  CHECK(r.path_prefix.length() >= formulas.size());
}
