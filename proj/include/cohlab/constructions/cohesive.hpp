#pragma once

#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/sets/approx_set.hpp"
#include "cohlab/trees/family.hpp"

namespace cohlab::constructions {

struct CohesiveStage {
  u64 stage{0};          // 0-based stage index
  u64 chosen{0};         // the least admissible s
  std::vector<u8> pattern;  // f(k, chosen) for k < constrained count
};

/// C = {c_0 < c_1 < ...} built by the least-s rule: c_l is the least s above
/// c_{l-1} with R_k(s) iff f(k, s) = 1 for every k < min(l, count).
struct CohesiveOutput {
  std::vector<u64> elements;
  std::vector<CohesiveStage> per_stage_log;
};

/// Throws SearchExhausted(stage) when no s below search_bound qualifies.
/// f is the stage-indexed path approximation the elements follow.
CohesiveOutput cohesive_from_path(const trees::UniformFamily& r,
                                  const sets::ApproxSet& f, u64 count,
                                  u64 search_bound);

}  // namespace cohlab::constructions
