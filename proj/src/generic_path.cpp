#include "cohlab/constructions/generic_path.hpp"

#include "cohlab/errors.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::constructions {

namespace {

bool converges_on(const vm::Program& formula, u64 argument, const sets::Oracle& base,
                  const trees::BinaryString& window, u64 step_cap) {
  vm::WindowView w(window.bits());
  vm::JoinView join(base.view(), w);
  u64 args[1] = {argument};
  return vm::run(formula, args, join, step_cap).halted();
}

}  // namespace

GenericPathResult simpson_smith_path(const trees::TruncatedTree& t,
                                     const std::vector<PathForcingFormula>& formulas,
                                     const sets::Oracle& base, u64 formula_step_cap,
                                     u64 node_budget) {
  for (const auto& f : formulas)
    if (f.program.arity != 1)
      throw Error("generic-path formulas must have arity 1");

  GenericPathResult out;
  out.formula_step_cap = formula_step_cap;

  trees::TreeSnapshot current = t.materialize(node_budget);
  if (!current.viable()) throw DeadEnd("input tree is not viable at its depth");
  trees::BinaryString prefix;

  for (u64 n = 0; n < formulas.size(); ++n) {
    const auto& f = formulas[n];
    trees::TreeSnapshot inter = current.filtered([&](const trees::BinaryString& s) {
      return !converges_on(f.program, f.argument, base, s, formula_step_cap);
    });
    PathForcingDecision d;
    d.index = n;
    d.argument = f.argument;
    d.intersected = inter.viable();
    if (d.intersected) current = std::move(inter);

    if (prefix.length() < current.depth()) {
      prefix = current.leftmost_viable_extension(prefix);
      current = current.restricted_above(prefix);
    }
    d.prefix_after = prefix;
    d.nodes_after = current.node_count();
    out.decisions.push_back(std::move(d));
  }

  while (prefix.length() < current.depth())
    prefix = current.leftmost_viable_extension(prefix);
  out.path_prefix = prefix;
  return out;
}

}  // namespace cohlab::constructions
