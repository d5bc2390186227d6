#pragma once

#include <string>
#include <vector>

#include "cohlab/constructions/generic_path.hpp"
#include "cohlab/constructions/inversion.hpp"
#include "cohlab/sets/oracle.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::constructions {

/// One tree to process: its membership program runs against the capped jump
/// of the current top oracle (the tree is decidable there), and the path
/// forcing formulas run against that same jump view.
struct PipelineTreeSpec {
  vm::Program tree_program;  // arity 1, on string codes
  u64 depth{6};
  std::vector<PathForcingFormula> formulas;
  u64 jump_cap{2000};
  u64 tree_step_budget{4000};
  u64 formula_step_cap{256};
  InversionBudgets inversion;
};

struct PipelineLink {
  GenericPathResult path;
  InversionTranscript inversion;
  std::vector<u8> next_top_prefix;  // the built B, as bits
};

/// Iterates: view the tree through the top's capped jump, extract a generic
/// path, then invert to a new top B = old top joined with the built set, with
/// the path coded into B's jump data. A constituent error aborts with the
/// partial chain and the error message recorded.
struct PipelineChain {
  std::vector<PipelineLink> links;
  bool completed{true};
  std::string abort_reason;
};

PipelineChain ideal_pipeline(const sets::Oracle& start,
                             const std::vector<PipelineTreeSpec>& specs);

/// The oracle at position i of the chain (0 = the start).
sets::Oracle chain_top(const sets::Oracle& start, const PipelineChain& chain,
                       size_t upto);

}  // namespace cohlab::constructions
