#pragma once

#include <vector>

#include "cohlab/constructions/cohesive.hpp"
#include "cohlab/sets/approx_set.hpp"
#include "cohlab/sets/reduction.hpp"
#include "cohlab/trees/tree.hpp"

namespace cohlab::constructions {

/// Classifies strings of a staged tree by which side above them grows last:
/// first is the "right side dies, left side still grows" class, second the
/// mirror image. Both descriptors range over string codes below
/// 2^(depth+1) with quantifier range = stage count. Disjoint by construction.
std::pair<sets::Sigma2Descriptor, sets::Sigma2Descriptor> sigma2_from_tree(
    const trees::TruncatedTree& t);

/// A 0/1 stage guess whose value stabilizes to 1 exactly on members of first,
/// to 0 exactly on members of second, and oscillates forever elsewhere; so
/// {s : f(x,s)=1} is infinite iff x is outside `second`, and {s : f(x,s)=0}
/// is infinite iff x is outside `first`.
sets::ApproxSet separation_guess(const sets::Sigma2Descriptor& first,
                                 const sets::Sigma2Descriptor& second);

/// The family the guess induces: R_x(s) = [f(x,s) = 1], for x < x_range.
trees::UniformFamily derived_family(const sets::ApproxSet& f, u64 x_range);

/// Stage approximation of "x settles on `first`'s side": 1 once x looks like
/// a member of first (and not of second) at the stage window, else 0. This is
/// the limit of the guess along stages where the undecided coordinates rest
/// at 0, i.e. the leftmost stable pattern the guess realizes; cohesive
/// elements chosen against it make the guess's limit along them total.
sets::ApproxSet stable_membership_approx(const sets::Sigma2Descriptor& first,
                                         const sets::Sigma2Descriptor& second);

/// D(x, s) = f(x, c) with c the largest element of C at most s (0 if none).
/// The limit along C separates whatever f's stable sides separate. Verifies
/// first that C is cohesive for the derived family (constant tails of length
/// at least 2); throws NotCohesive otherwise. The result carries modulus
/// max(C).
sets::ApproxSet separator_from_cohesive(const sets::ApproxSet& f,
                                        const std::vector<u64>& cohesive_elements,
                                        u64 x_range);

/// The selection rule turning a string separator into a path: the stage-s
/// string of length l takes bit k = D(code of its own k-prefix, s). Returned
/// as an approximation on string codes (membership of prefixes of the stage-s
/// string).
sets::ApproxSet path_from_separator(const sets::ApproxSet& d, u64 depth);

/// The settled chain the selection rule converges to, one string per length
/// 0..depth. Throws Unstable when D has no modulus and did not settle within
/// the budget.
std::vector<trees::BinaryString> settled_selection_chain(const sets::ApproxSet& d,
                                                         u64 depth, u64 budget,
                                                         u64 settle_window);

}  // namespace cohlab::constructions
