#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/sets/jump.hpp"
#include "cohlab/sets/oracle.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::sets {

/// A Turing reduction with a computable bound on both running time and oracle
/// use: on input x the program must halt within bound(x) steps and query only
/// values below bound(x).
struct WttReduction {
  vm::Program program;       // arity 1, runs against the reduction's oracle
  vm::Program bound_program; // arity 1, oracle-free, computes the budget
  u64 bound_eval_budget{100000};

  u64 bound(u64 x) const;  // runs bound_program; throws on non-halt
};

struct WttAnswer {
  int bit{0};
  std::vector<u64> queries;
  u64 steps{0};
};

/// Runs the reduction at its own declared budget. Throws BoundViolation when
/// the run outlives bound(x) steps or asks about a value >= bound(x).
WttAnswer wtt_apply(const WttReduction& r, const Oracle& oracle, u64 x);

/// x in B  iff  exists y1 < quant_range, for all y2 < quant_range, the matrix
/// accepts (x, y1, y2). "Accepts" means halts with a nonzero value. The
/// matrix is either an arity-3 program over `env` (registers r0..r4 only) or
/// an explicit evaluator; the declared ranges are part of the object because
/// the unbounded quantifiers of the abstract form are not decidable.
class Sigma2Descriptor {
 public:
  using MatrixFn = std::function<bool(u64 x, u64 y1, u64 y2)>;

  static Sigma2Descriptor from_program(vm::Program psi, Oracle env, u64 step_budget,
                                       u64 x_range, u64 quant_range);
  static Sigma2Descriptor from_fn(MatrixFn fn, u64 x_range, u64 quant_range);

  bool matrix(u64 x, u64 y1, u64 y2) const;
  u64 x_range() const { return x_range_; }
  u64 quant_range() const { return quant_range_; }

  /// Brute-force double loop over the declared ranges.
  bool brute_force_member(u64 x) const;

  bool is_program_backed() const { return prog_.has_value(); }
  const vm::Program& psi() const { return prog_->psi; }
  const Oracle& env() const { return prog_->env; }
  u64 step_budget() const { return prog_->budget; }

 private:
  struct ProgBacking {
    vm::Program psi;
    Oracle env;
    u64 budget;
  };
  MatrixFn fn_;
  std::optional<ProgBacking> prog_;
  u64 x_range_{0};
  u64 quant_range_{0};
};

/// Result of the Post step on a Sigma2 descriptor: the inner "for all y2"
/// block of each (x, y1) pair becomes one halting question about the jump of
/// the descriptor's oracle. The reduction program consults those questions
/// through a jump view keyed by pair(x, y1); `searcher_indices` holds the
/// true program indices behind each key, and `searcher(x,y1)` rebuilds the
/// specialized searcher itself.
struct PostReduction {
  WttReduction reduction;           // queries the keyed jump view
  Oracle keyed_jump_view;           // table oracle: pair(x,y1) -> bit of jump(A)
  std::vector<std::vector<Nat>> searcher_indices;  // [x][y1]
  u64 x_range{0};
  u64 quant_range{0};
  u64 jump_cap{0};

  /// Evaluates the reduced Sigma1(jump) form for x through wtt_apply.
  bool member(u64 x) const;
};

/// The Post step (downward direction, one quantifier): builds, for each
/// (x, y1), the specialized rejection searcher, decides its diagonal halting
/// against jump-of-env at `jump_cap`, and packages the Sigma1(jump) form as a
/// wtt reduction with a quadratic bound. Descriptor must be program-backed.
/// Throws UndecidableAtCap if any searcher's halting cannot be settled.
PostReduction post_reduce(const Sigma2Descriptor& phi, u64 jump_cap);

/// Relativization transitivity: from two programs semi-deciding B and its
/// complement from A, and a program enumerating C from B, produce a program
/// enumerating C from A. The B-programs are first checked complementary on
/// [0, check_range) at check_budget steps; a value where neither or both
/// halt is an Error.
vm::Program compose_reduction(const vm::Program& b_yes_from_a,
                              const vm::Program& b_no_from_a,
                              const vm::Program& c_from_b, const Oracle& a,
                              u64 check_range, u64 check_budget);

}  // namespace cohlab::sets
