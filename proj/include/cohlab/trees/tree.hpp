#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/sets/oracle.hpp"
#include "cohlab/trees/binary_string.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::trees {

/// Explicit node set of a tree up to a depth; the working form most tree
/// operations use. Nodes are stored as prepend-1 codes, sorted.
class TreeSnapshot {
 public:
  TreeSnapshot() = default;
  TreeSnapshot(std::vector<u64> sorted_codes, u64 depth);

  static TreeSnapshot full(u64 depth);

  bool contains(u64 code) const;
  bool contains(const BinaryString& s) const { return contains(s.code()); }
  const std::vector<u64>& codes() const { return codes_; }
  u64 depth() const { return depth_; }
  size_t node_count() const { return codes_.size(); }

  /// True when some node has length == depth (the finite proxy for an
  /// infinite tree).
  bool viable() const;
  /// True when some node of length == depth extends s.
  bool viable_above(const BinaryString& s) const;

  /// The lexicographically least one-bit extension of s with a viable
  /// subtree. Throws DeadEnd when neither child has one.
  BinaryString leftmost_viable_extension(const BinaryString& s) const;

  /// Leftmost depth-length path from the root. Throws DeadEnd if not viable.
  BinaryString leftmost_path() const;

  /// Keeps only nodes satisfying keep (and checks the result is still
  /// initial-segment closed, which holds for the window-monotone predicates
  /// used here; a violation is a NotATree bug guard).
  TreeSnapshot filtered(const std::function<bool(const BinaryString&)>& keep) const;

  /// Keeps only nodes comparable with s (prefixes of s and extensions of s).
  TreeSnapshot restricted_above(const BinaryString& s) const;

 private:
  void recompute_viability();
  std::vector<u64> codes_;
  std::set<u64> viable_marks_;  // nodes with a depth-length descendant
  u64 depth_{0};
};

/// A finite-depth view of a binary tree given by a membership predicate, with
/// an optional stage family for limit-computable trees.
class TruncatedTree {
 public:
  using Predicate = std::function<bool(const BinaryString&)>;

  /// Program-backed: arity-1 program on string codes over `env`.
  static TruncatedTree from_program(vm::Program p, sets::Oracle env, u64 step_budget,
                                    u64 depth);
  static TruncatedTree from_predicate(Predicate pred, u64 depth);
  static TruncatedTree from_nodes(std::vector<u64> codes, u64 depth);

  /// Stage family: stage s maps to its own tree snapshot. Stages beyond the
  /// last one repeat the last (the approximation has settled by then).
  TruncatedTree with_stage_snapshots(std::vector<TreeSnapshot> stages) const;

  u64 depth() const { return depth_; }
  bool has_stages() const { return !stages_.empty(); }
  u64 stage_count() const { return stages_.size(); }
  const TreeSnapshot& stage(u64 s) const;

  bool member(const BinaryString& s) const;

  /// Enumerates up to depth, validating initial-segment closure over the
  /// whole depth window. Throws NotATree naming the missing parent, or
  /// BudgetExceeded when the node budget is too small for the depth.
  TreeSnapshot materialize(u64 node_budget = 1 << 20) const;

  bool is_program_backed() const { return prog_.has_value(); }
  const vm::Program& backing_program() const { return prog_->p; }
  const sets::Oracle& backing_env() const { return prog_->env; }
  u64 backing_budget() const { return prog_->budget; }
  const std::vector<u64>& explicit_nodes() const { return explicit_nodes_; }
  bool is_explicit() const { return explicit_; }

 private:
  struct ProgBacking {
    vm::Program p;
    sets::Oracle env;
    u64 budget;
  };
  Predicate pred_;
  std::optional<ProgBacking> prog_;
  bool explicit_{false};
  std::vector<u64> explicit_nodes_;
  std::vector<TreeSnapshot> stages_;
  u64 depth_{0};
};

/// viable(t): the "has a node at max depth" proxy for infinitude.
bool viable(const TruncatedTree& t, u64 node_budget = 1 << 20);

}  // namespace cohlab::trees
