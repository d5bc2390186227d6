#include "cohlab/sets/jump.hpp"

#include <algorithm>

#include "cohlab/vm/godel.hpp"

namespace cohlab::sets {

vm::RunResult diagonal_run(const Nat& index, const Oracle& oracle, u64 step_budget) {
  vm::Program p = vm::decode(index);
  if (p.arity > 0 && !fits_u64(index)) {
    // The argument cannot be placed in a machine-word register; report the
    // run as never halting at this budget.
    vm::RunResult r;
    r.status = vm::RunStatus::StillRunning;
    r.steps = step_budget;
    return r;
  }
  std::vector<u64> args(p.arity, p.arity > 0 ? static_cast<u64>(index) : 0);
  // Detection only ever converts budget-exhausting loops into early Diverges;
  // halting behaviour and values are identical to a plain run.
  return vm::run_detecting(p, args, oracle.view(), step_budget);
}

HaltDecision decide_halting(const Nat& index, const Oracle& oracle, u64 cap) {
  vm::Program p = vm::decode(index);
  HaltDecision d;
  if (p.arity > 0 && !fits_u64(index)) {
    d.status = HaltStatus::Unknown;
    return d;
  }
  std::vector<u64> args(p.arity, p.arity > 0 ? static_cast<u64>(index) : 0);
  d.run = vm::run_detecting(p, args, oracle.view(), cap);
  switch (d.run.status) {
    case vm::RunStatus::Halted: d.status = HaltStatus::Halts; break;
    case vm::RunStatus::Diverges: d.status = HaltStatus::Diverges; break;
    default: d.status = HaltStatus::Unknown; break;
  }
  return d;
}

bool EnumSet::contains_at(u64 x, u64 s) const {
  auto v = at_stage(s);
  return std::binary_search(v.begin(), v.end(), x);
}

EnumSet jump(const Oracle& a, u64 enumeration_cap) {
  return EnumSet([a, enumeration_cap](u64 stage) {
    std::vector<u64> out;
    u64 limit = std::min(stage, enumeration_cap);
    for (u64 e = 0; e < limit; ++e) {
      if (diagonal_run(Nat(e), a, stage).halted()) out.push_back(e);
    }
    return out;
  });
}

bool jump_contains_at(const Oracle& a, const Nat& index, u64 stage) {
  if (index >= stage) return false;
  return diagonal_run(index, a, stage).halted();
}

EnumSet enumerated_set(const vm::Program& p, const Oracle& oracle, u64 universe_cap) {
  return EnumSet([p, oracle, universe_cap](u64 stage) {
    std::vector<u64> out;
    for (u64 y = 0; y < universe_cap; ++y) {
      u64 args[1] = {y};
      if (vm::run_detecting(p, args, oracle.view(), stage).halted()) out.push_back(y);
    }
    return out;
  });
}

}  // namespace cohlab::sets
