#pragma once

#include <map>
#include <memory>
#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/vm/program.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::sets {

/// A total membership predicate on naturals. Immutable value type; cheap to
/// copy. Backed by an explicit finite table with a default bit, an arity-1
/// program over a base oracle, a join of two oracles, or a cap-bounded view
/// of another oracle's jump.
///
/// Totality is enforced, not assumed: a program-backed oracle whose program
/// exceeds its internal step budget throws OracleBudgetError, and a jump view
/// that cannot settle a halting question at its cap throws UndecidableAtCap.
class Oracle {
 public:
  Oracle();  // the empty set

  static Oracle empty_set();
  static Oracle table(std::map<u64, bool> entries, bool default_bit = false);
  static Oracle from_members(const std::vector<u64>& members);  // default 0
  static Oracle program(vm::Program p, Oracle base, u64 step_budget);
  static Oracle join(Oracle evens_side, Oracle odds_side);
  /// e is a member iff the diagonal run of program e against `base` halts
  /// within `cap` steps; runs that do not halt must be loop-certified within
  /// the cap or the query throws UndecidableAtCap. Answers are memoized.
  static Oracle capped_jump(Oracle base, u64 cap);

  bool contains(u64 x) const;
  int bit(u64 x) const { return contains(x) ? 1 : 0; }

  /// Interpreter adapter (total; never Blocked).
  const vm::OracleView& view() const;

  enum class Kind : u8 { Table, Program, Join, CappedJump };
  Kind kind() const;

  // Introspection for serialization.
  const std::map<u64, bool>& table_entries() const;
  bool table_default() const;
  const vm::Program& backing_program() const;
  Oracle base() const;   // Program and CappedJump
  u64 step_budget() const;      // Program
  u64 jump_cap() const;         // CappedJump
  Oracle left() const;   // Join
  Oracle right() const;  // Join

 private:
  struct Node;
  explicit Oracle(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace cohlab::sets
