#pragma once

#include <utility>
#include <vector>

#include "cohlab/vm/program.hpp"

namespace cohlab::vm {

/// Partial evaluation: pins the given argument positions of p to constants.
/// The result has arity p.arity - fixed.size(); running it on the remaining
/// arguments reproduces p's halting, value and queries on the merged argument
/// list, at a fixed additive step overhead (argument shuffling plus unrolled
/// constant loading). Throws Error on out-of-range or duplicate positions.
Program specialize(const Program& p, const std::vector<std::pair<u32, u64>>& fixed);

/// Builds, from an arity-3 matrix program psi (registers r0..r4 only; accepts
/// = halts with a nonzero value), the arity-2 program that on (x, y1) searches
/// y2 < quant_range for a rejection of (x, y1, y2). It halts with 1 when a
/// rejection exists and otherwise parks in a one-instruction self-loop, so its
/// divergence is always loop-certifiable. Throws Error if psi touches r5..r7.
Program make_rejection_searcher(const Program& psi, u64 quant_range);

/// Register/flag conventions for programs that get inlined into other
/// programs. A "decider" is an arity-1 program over r0..r2 whose halting is
/// the answer; a "consumer" is an arity-1 program over r0..r1 that treats the
/// oracle as a set it consults. Both must pair every QUERY with an
/// immediately following JZ flag or HALT flag, must not read the flag
/// anywhere else, and no jump may land between a QUERY and its consumer.
void validate_decider(const Program& p);
void validate_consumer(const Program& p);

/// Relativization transitivity at the program level: rewrites consumer (an
/// enumerator asking questions about B) into a program asking questions about
/// A only, by dovetailing the two B-deciders (halting = yes / halting = no)
/// at every query site. Inputs must satisfy the conventions above.
Program compose_through_deciders(const Program& consumer, const Program& b_yes,
                                 const Program& b_no);

}  // namespace cohlab::vm
