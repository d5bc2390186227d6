#include "cohlab/constructions/superlow.hpp"

#include "cohlab/errors.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::constructions {

bool formula_converges(const vm::Program& formula, const sets::Oracle& base,
                       const trees::BinaryString& window, u64 step_cap) {
  vm::WindowView w(window.bits());
  vm::JoinView join(base.view(), w);
  auto r = vm::run(formula, {}, join, step_cap);
  return r.halted();
}

ForcingTranscript superlow_basis(const trees::TruncatedTree& t,
                                 const std::vector<vm::Program>& formulas,
                                 const sets::Oracle& base, u64 formula_step_cap,
                                 u64 node_budget) {
  for (const auto& f : formulas)
    if (f.arity != 0) throw Error("superlow formulas must have arity 0");

  ForcingTranscript tr;
  tr.formula_step_cap = formula_step_cap;

  trees::TreeSnapshot current = t.materialize(node_budget);
  if (!current.viable()) throw DeadEnd("input tree is not viable at its depth");
  trees::BinaryString prefix;

  for (u64 e = 0; e < formulas.size(); ++e) {
    // Odd stage 2e+1: the divergence class of formula e.
    const vm::Program& phi = formulas[e];
    trees::TreeSnapshot inter = current.filtered([&](const trees::BinaryString& s) {
      return !formula_converges(phi, base, s, formula_step_cap);
    });
    bool viable = inter.viable();
    tr.queries.push_back(ForcingQuery{e, viable});

    ForcingDecision d;
    d.e = e;
    d.forced_divergent = viable;
    d.jump_bit = viable ? 0 : 1;
    if (viable) current = std::move(inter);
    tr.jump_table.push_back(d.jump_bit);

    // Even stage 2e+2: leftmost viable branch above the committed prefix.
    if (prefix.length() < current.depth()) {
      prefix = current.leftmost_viable_extension(prefix);
      current = current.restricted_above(prefix);
    }
    d.branch = prefix;
    d.nodes_after = current.node_count();
    tr.decisions.push_back(std::move(d));
  }

  while (prefix.length() < current.depth())
    prefix = current.leftmost_viable_extension(prefix);
  tr.path_prefix = prefix;
  return tr;
}

}  // namespace cohlab::constructions
