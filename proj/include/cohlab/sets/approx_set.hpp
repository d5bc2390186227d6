#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/sets/oracle.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::sets {

/// A stage-indexed 0/1 approximation g(x, s), optionally with a modulus
/// bound: a stage per x after which g(x, .) no longer changes. This is the
/// limit-computable set of the workbench.
class ApproxSet {
 public:
  using Fn = std::function<int(u64 x, u64 s)>;
  using ModulusFn = std::function<u64(u64 x)>;

  ApproxSet() = default;

  /// Arity-2 program (x, s) -> bit over `env`, run within step_budget; a run
  /// that fails to halt is an OracleBudgetError (approximations are total).
  static ApproxSet from_program(vm::Program p, Oracle env, u64 step_budget);
  /// Explicit grid; x >= width or s >= stages fall back to the clamped edge
  /// (values are meant to be constant beyond the stored window).
  static ApproxSet from_grid(u64 width, u64 stages, std::vector<u8> bits);
  static ApproxSet from_fn(Fn fn);

  ApproxSet with_modulus(u64 uniform_stage) const;
  ApproxSet with_modulus_fn(ModulusFn m) const;

  int approx(u64 x, u64 s) const;
  bool has_modulus() const { return static_cast<bool>(modulus_); }
  std::optional<u64> modulus_at(u64 x) const;

  /// Budgeted limit. With a modulus, the value at the modulus stage. Without
  /// one, the value at `budget`, accepted only if it did not change anywhere
  /// in (budget - settle_window, budget]; otherwise throws Unstable.
  int limit(u64 x, u64 budget, u64 settle_window) const;

  /// Checks the modulus claim on a grid of sample points; throws Unstable on
  /// a violation.
  void spot_check_modulus(const std::vector<u64>& xs, u64 up_to_stage) const;

  // Introspection for serialization (program-backed only).
  bool is_program_backed() const { return prog_.has_value(); }
  const vm::Program& backing_program() const { return prog_->p; }
  const Oracle& backing_env() const { return prog_->env; }
  u64 backing_budget() const { return prog_->budget; }

 private:
  struct ProgBacking {
    vm::Program p;
    Oracle env;
    u64 budget;
  };
  Fn fn_;
  ModulusFn modulus_;
  std::optional<ProgBacking> prog_;
};

}  // namespace cohlab::sets
