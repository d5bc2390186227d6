#pragma once

#include <string>
#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/sets/oracle.hpp"
#include "cohlab/trees/binary_string.hpp"

namespace cohlab::constructions {

struct InversionBudgets {
  u64 stages{40};
  u64 sigma_width_cap{256};  // candidate extensions searched per B-stage
  u64 ext_len_cap{6};        // extra window bits searched per jump claim
  u64 time_cap{128};         // step budget for witness runs
};

struct InversionWitness {
  u64 e{0};
  std::string window;  // the realizing window bits (extends sigma)
  u64 steps{0};        // halting step count of the witnessing run
};

struct InversionStage {
  u64 stage{0};
  bool strategy_b{true};  // false: jump-coding strategy
  bool success{false};    // B: a candidate was committed this stage
  bool width_capped{false};
  std::string found_sigma;  // committed extension before the coding block
  std::string c_block;      // coding block appended after it
  std::string sigma_after;
  std::string tau_after;
  std::vector<InversionWitness> witnesses;  // new convergence claims realized
};

/// Builds B and its claimed jump by initial segments, alternating a B-growing
/// strategy (commit an extension keeping every claimed-convergent computation
/// convergent, then append a block of C's bits) with a jump-coding strategy
/// (extend the claim string, preferring convergence claims that a bounded
/// window search can realize). tau bit 0 records a convergence claim.
struct InversionTranscript {
  std::vector<InversionStage> stages;
  trees::BinaryString b_prefix;
  std::vector<u8> tau;         // 0 = claimed convergent
  std::vector<u8> jump_guess;  // 1 = claimed member of the jump
  InversionBudgets budgets;
};

/// Diagonal convergence of index e against base joined with a finite window.
bool index_converges(u64 e, const sets::Oracle& base,
                     const trees::BinaryString& window, u64 step_budget);

InversionTranscript friedberg_invert(const sets::Oracle& a, const sets::Oracle& c,
                                     const InversionBudgets& budgets);

/// The coded fragment a transcript carries: the largest committed block,
/// i.e. C restricted to [0, s) for the last successful B-stage s.
std::vector<u8> coded_fragment(const InversionTranscript& tr);

}  // namespace cohlab::constructions
