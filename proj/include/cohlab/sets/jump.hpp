#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/sets/oracle.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::sets {

/// Runs program `index` on `arity` copies of its own index (no arguments for
/// arity 0). Indices whose programs take arguments wider than a machine word
/// cannot be run; callers see that as StillRunning (treated as not halted).
vm::RunResult diagonal_run(const Nat& index, const Oracle& oracle, u64 step_budget);

enum class HaltStatus : u8 { Halts, Diverges, Unknown };

struct HaltDecision {
  HaltStatus status{HaltStatus::Unknown};
  vm::RunResult run;  // Diverges carries the loop certificate
};

/// Cap-plus-certificate halting decision for the diagonal run: Halts iff the
/// run halts within cap; Diverges only with a replayable repeated
/// configuration; Unknown otherwise.
HaltDecision decide_halting(const Nat& index, const Oracle& oracle, u64 cap);

/// A stage-indexed enumerable set: stage s yields a finite set, monotone
/// nondecreasing in s.
class EnumSet {
 public:
  using StageFn = std::function<std::vector<u64>(u64)>;
  explicit EnumSet(StageFn fn) : fn_(std::move(fn)) {}

  std::vector<u64> at_stage(u64 s) const { return fn_(s); }
  bool contains_at(u64 x, u64 s) const;

 private:
  StageFn fn_;
};

/// The jump of A as an enumerable set: stage s holds every e < s whose
/// diagonal run against A halts within s steps. Materializing a stage
/// additionally clips the index range at enumeration_cap, since stages can be
/// far larger than any range worth scanning.
EnumSet jump(const Oracle& a, u64 enumeration_cap = 1 << 16);

/// Point query of the same stage approximation, for indices of any size.
bool jump_contains_at(const Oracle& a, const Nat& index, u64 stage);

/// Semi-decision semantics of an arity-1 program: the set it enumerates.
/// Stage s = { y < universe_cap : the run on y halts within s steps }.
EnumSet enumerated_set(const vm::Program& p, const Oracle& oracle, u64 universe_cap);

}  // namespace cohlab::sets
