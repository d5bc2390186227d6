#pragma once

#include <vector>

#include "cohlab/sets/oracle.hpp"
#include "cohlab/trees/tree.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::constructions {

/// A formula instance for the generic-path forcing: an arity-1 program asked
/// about one specific argument, against base + path window.
struct PathForcingFormula {
  vm::Program program;
  u64 argument{0};
};

struct PathForcingDecision {
  u64 index{0};
  u64 argument{0};
  bool intersected{false};  // kept the divergence class
  trees::BinaryString prefix_after;
  u64 nodes_after{0};
};

struct GenericPathResult {
  trees::BinaryString path_prefix;  // reaches full depth
  std::vector<PathForcingDecision> decisions;
  u64 formula_step_cap{0};
};

/// Processes the formulas in order, intersecting with each divergence class
/// that stays viable at depth, and interleaves one leftmost branch-forcing
/// step per formula so the committed prefix grows. The final prefix lies in
/// every retained class.
GenericPathResult simpson_smith_path(const trees::TruncatedTree& t,
                                     const std::vector<PathForcingFormula>& formulas,
                                     const sets::Oracle& base, u64 formula_step_cap,
                                     u64 node_budget = 1 << 20);

}  // namespace cohlab::constructions
