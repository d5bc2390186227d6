#pragma once

#include <optional>
#include <vector>

#include "cohlab/sets/oracle.hpp"
#include "cohlab/trees/tree.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::constructions {

/// Convergence of a formula program against base + a finite path window:
/// halted within the cap, with every odd-side (path) query answered inside
/// the window. Monotone: once converged under a window, converged under
/// every extension.
bool formula_converges(const vm::Program& formula, const sets::Oracle& base,
                       const trees::BinaryString& window, u64 step_cap);

struct ForcingQuery {
  u64 e{0};
  bool divergence_class_viable{false};  // the single viability question asked
};

struct ForcingDecision {
  u64 e{0};
  bool forced_divergent{false};  // kept the divergence class
  u8 jump_bit{0};                // 1 = converges along the path
  trees::BinaryString branch;    // prefix after this index's even stage
  u64 nodes_after{0};
};

struct ForcingTranscript {
  std::vector<ForcingDecision> decisions;
  std::vector<ForcingQuery> queries;
  trees::BinaryString path_prefix;  // extended leftmost to full depth
  std::vector<u8> jump_table;
  u64 formula_step_cap{0};
};

/// Odd stages decide one formula each: intersect with its divergence class
/// when that is viable (jump bit 0), keep the tree otherwise (jump bit 1).
/// Even stages extend the committed prefix by the leftmost viable branch.
/// One viability question is asked per formula; the transcript records
/// them all (the 2^n predetermined-query bound is checked by the verifier).
ForcingTranscript superlow_basis(const trees::TruncatedTree& t,
                                 const std::vector<vm::Program>& formulas,
                                 const sets::Oracle& base, u64 formula_step_cap,
                                 u64 node_budget = 1 << 20);

}  // namespace cohlab::constructions
