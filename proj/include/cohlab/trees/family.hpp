#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/sets/approx_set.hpp"
#include "cohlab/sets/oracle.hpp"
#include "cohlab/trees/tree.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::trees {

/// A uniformly computable finite sequence of relations R_0 .. R_{count-1}.
class UniformFamily {
 public:
  using MemberFn = std::function<bool(u64 k, u64 x)>;

  /// Arity-2 program (k, x) -> bit over `env`.
  static UniformFamily from_program(vm::Program p, sets::Oracle env, u64 step_budget,
                                    u64 count);
  /// Explicit bit grid, count rows by width columns; columns beyond the width
  /// repeat with period `width` (catalog families are periodic).
  static UniformFamily from_grid(u64 count, u64 width, std::vector<u8> bits);
  static UniformFamily from_fn(MemberFn fn, u64 count);

  /// Indices k >= count are padding: the full relation.
  bool member(u64 k, u64 x) const;
  u64 count() const { return count_; }

  bool is_program_backed() const { return prog_.has_value(); }
  const vm::Program& backing_program() const { return prog_->p; }
  const sets::Oracle& backing_env() const { return prog_->env; }
  u64 backing_budget() const { return prog_->budget; }
  bool is_grid() const { return grid_.has_value(); }
  u64 grid_width() const { return grid_->width; }
  const std::vector<u8>& grid_bits() const { return grid_->bits; }

 private:
  struct ProgBacking {
    vm::Program p;
    sets::Oracle env;
    u64 budget;
  };
  struct Grid {
    u64 width;
    std::vector<u8> bits;
  };
  MemberFn fn_;
  std::optional<ProgBacking> prog_;
  std::optional<Grid> grid_;
  u64 count_{0};
};

/// The tree of patterns with abundant witnesses: a string s of length l is a
/// node exactly when more than l values x < witness_bound match the pattern
/// "R_k(x) iff s(k)=1 for every k < l". Monotone in witness_bound.
TruncatedTree tree_from_family(const UniformFamily& r, u64 witness_bound, u64 depth);

/// Stage-s path approximation for tree_from_family: bit k of the lex-least
/// depth-length node of the tree materialized with witness bound s (all zero
/// when no such node exists yet). Settles once s reaches witness_bound; the
/// returned set carries that modulus.
sets::ApproxSet path_approx_from_family(const UniformFamily& r, u64 witness_bound,
                                        u64 depth);

}  // namespace cohlab::trees
