#include "cohlab/sets/approx_set.hpp"

#include <algorithm>

#include "cohlab/errors.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::sets {

ApproxSet ApproxSet::from_program(vm::Program p, Oracle env, u64 step_budget) {
  if (p.arity != 2) throw Error("approximation program must have arity 2");
  ApproxSet a;
  a.prog_ = ProgBacking{p, env, step_budget};
  a.fn_ = [p = std::move(p), env = std::move(env), step_budget](u64 x, u64 s) -> int {
    u64 args[2] = {x, s};
    auto r = vm::run(p, args, env.view(), step_budget);
    if (!r.halted())
      throw OracleBudgetError("approximation program exceeded its budget at (" +
                              std::to_string(x) + ", " + std::to_string(s) + ")");
    return r.value != 0 ? 1 : 0;
  };
  return a;
}

ApproxSet ApproxSet::from_grid(u64 width, u64 stages, std::vector<u8> bits) {
  if (width == 0 || stages == 0 || bits.size() != width * stages)
    throw Error("grid dimensions do not match the bit vector");
  ApproxSet a;
  a.fn_ = [width, stages, bits = std::move(bits)](u64 x, u64 s) -> int {
    u64 cx = std::min(x, width - 1);
    u64 cs = std::min(s, stages - 1);
    return bits[cx * stages + cs] ? 1 : 0;
  };
  return a;
}

ApproxSet ApproxSet::from_fn(Fn fn) {
  ApproxSet a;
  a.fn_ = std::move(fn);
  return a;
}

ApproxSet ApproxSet::with_modulus(u64 uniform_stage) const {
  ApproxSet a = *this;
  a.modulus_ = [uniform_stage](u64) { return uniform_stage; };
  return a;
}

ApproxSet ApproxSet::with_modulus_fn(ModulusFn m) const {
  ApproxSet a = *this;
  a.modulus_ = std::move(m);
  return a;
}

int ApproxSet::approx(u64 x, u64 s) const {
  if (!fn_) throw Error("empty approximation");
  return fn_(x, s);
}

std::optional<u64> ApproxSet::modulus_at(u64 x) const {
  if (!modulus_) return std::nullopt;
  return modulus_(x);
}

int ApproxSet::limit(u64 x, u64 budget, u64 settle_window) const {
  if (modulus_) {
    u64 m = modulus_(x);
    return approx(x, m);
  }
  if (budget == 0) throw Unstable("limit query with zero budget");
  int v = approx(x, budget);
  u64 from = settle_window >= budget ? 0 : budget - settle_window;
  for (u64 s = budget; s-- > from;) {
    if (approx(x, s) != v)
      throw Unstable("approximation still changing at stage " + std::to_string(s + 1) +
                     " for x = " + std::to_string(x));
  }
  return v;
}

void ApproxSet::spot_check_modulus(const std::vector<u64>& xs, u64 up_to_stage) const {
  if (!modulus_) return;
  for (u64 x : xs) {
    u64 m = modulus_(x);
    int v = approx(x, m);
    for (u64 s = m; s <= up_to_stage; ++s) {
      if (approx(x, s) != v)
        throw Unstable("modulus claim violated at x = " + std::to_string(x) +
                       ", stage " + std::to_string(s));
    }
  }
}

}  // namespace cohlab::sets
