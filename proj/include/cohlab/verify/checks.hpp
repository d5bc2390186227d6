#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohlab/constructions/coding.hpp"
#include "cohlab/constructions/inversion.hpp"
#include "cohlab/constructions/superlow.hpp"
#include "cohlab/sets/approx_set.hpp"
#include "cohlab/sets/reduction.hpp"
#include "cohlab/trees/family.hpp"
#include "cohlab/trees/tree.hpp"

namespace cohlab::verify {

/// Every checker re-derives its verdict from the instance and the claimed
/// payload alone; none of them call the construction that produced the
/// payload (roundtrip_triangle below is the one deliberate composite runner).
struct Verdict {
  bool valid{true};
  std::string reason;  // machine-readable "what failed", empty when valid

  static Verdict ok() { return {}; }
  static Verdict fail(std::string r) { return {false, std::move(r)}; }
};

struct CohesiveThreshold {
  u64 k{0};
  u64 threshold{0};  // first element of the maximal constant tail
  u8 side{0};
  u64 tail_length{0};
};

struct CohesiveCheck {
  Verdict verdict;
  std::vector<CohesiveThreshold> thresholds;
};

/// "All but finitely many" over a finite prefix: a constant tail of length at
/// least min_tail per relation. Exact thresholds are reported.
CohesiveCheck check_cohesive(const std::vector<u64>& elements,
                             const trees::UniformFamily& r, u64 horizon,
                             u64 min_tail = 2);

/// The least-admissible-value rule: no value strictly between consecutive
/// elements satisfies its stage's constraint, and each element does.
Verdict check_least_rule(const std::vector<u64>& elements,
                         const trees::UniformFamily& r, const sets::ApproxSet& f);

/// first ⊆ limit(D) and limit(D) disjoint from second, both sides brute-forced
/// over the declared ranges. Throws Unstable if D cannot settle.
Verdict check_separator(const sets::ApproxSet& d, const sets::Sigma2Descriptor& first,
                        const sets::Sigma2Descriptor& second, u64 range, u64 budget,
                        u64 settle_window);

/// One string per length, a chain under extension, every member in the tree.
Verdict check_path(const std::vector<trees::BinaryString>& chain,
                   const trees::TreeSnapshot& tree);

struct SuperlowCheck {
  Verdict verdict;
  u64 query_count{0};
  u64 query_bound{0};
};

/// Path-in-tree at every level, the predetermined-query bound, and agreement
/// of the claimed jump bits with replayed halting (path extended by zeros as
/// a total oracle) on the annotated indices.
SuperlowCheck check_superlow(const constructions::ForcingTranscript& tr,
                             const trees::TruncatedTree& t,
                             const std::vector<vm::Program>& formulas,
                             const sets::Oracle& base,
                             const std::vector<u64>& annotated);

struct InversionCheck {
  Verdict verdict;
  std::vector<u8> decoded_c;  // bits recovered from b_prefix + the base oracle
  u64 claims_replayed{0};
};

/// Independent replay of the stage machine, reading coding blocks from the
/// transcript's b_prefix instead of any C: recomputes every search from the
/// base oracle and budgets, validates that the committed bits match b_prefix
/// and that every recorded stage matches the replay, re-runs every
/// convergence-claim witness, and returns the decoded fragment.
InversionCheck check_inversion(const constructions::InversionTranscript& tr,
                               const sets::Oracle& a);

struct SpectorCheck {
  Verdict verdict;
  std::vector<u64> zero_row_thresholds;
};

/// Row agreement above thresholds, zero rows above their own thresholds, and
/// blocking maximality re-verified by exhaustive search over the recorded
/// assignment space.
SpectorCheck check_spector(const constructions::SpectorResult& r,
                           const std::vector<sets::Oracle>& sets_coded);

struct TriangleRoundtrip {
  Verdict verdict;
  std::vector<u64> cohesive_elements;
  std::vector<trees::BinaryString> chain;
};

struct TriangleBudgets {
  u64 search_bound{4000};
  u64 extra_elements{8};
};

/// The equivalence loop run end to end on one staged tree: classify growth
/// sides, guess-separate, take a cohesive set for the derived family, build
/// the separator along it, select the path, and confirm the path lies in the
/// settled tree. This is the one verifier entry that runs constructions.
TriangleRoundtrip roundtrip_triangle(const trees::TruncatedTree& t,
                                     const TriangleBudgets& budgets);

}  // namespace cohlab::verify
