#pragma once

#include <map>
#include <optional>
#include <vector>

#include "cohlab/nat.hpp"
#include "cohlab/sets/oracle.hpp"

namespace cohlab::constructions {

/// Explicit coding of C on anchor points as triples <a, s, C(a)>, nested
/// Cantor pairs. Anchors must be strictly increasing coordinatewise in the
/// pairing order (pair(a,s) strictly increasing), which forces the triple
/// codes to increase as well.
struct RegularizedSet {
  std::vector<u64> triples;                    // sorted triple codes
  std::vector<std::array<u64, 3>> components;  // (a, s, bit) per anchor
};

RegularizedSet regularize(const sets::Oracle& c,
                          const std::vector<std::pair<u64, u64>>& anchors);

/// Decoding rule: a is in C iff some <a, s, 1> lies in D. Returns nothing
/// for points no triple speaks about.
std::optional<bool> regular_decode(const RegularizedSet& d, u64 a);

struct SpectorBlocking {
  u64 stage{0};                 // 1-based, processing set stage-1
  std::vector<u64> positions;   // the undecided positions assigned
  std::vector<u8> chosen_bits;  // lex-least maximizer over the search space
  std::vector<u64> convergent;  // e < q of the stage made convergent by it
  u64 search_space{0};          // number of assignments searched
};

struct SpectorResult {
  std::map<u64, u8> decided;    // position pair(x, row) -> bit
  std::vector<u64> thresholds;  // per coded set: columns below it are exempt
  std::vector<SpectorBlocking> blocking_log;
  std::vector<u64> q;
  u64 col_bound{0};
  u64 stage_budget{0};
  u64 ext_len{0};
};

/// Codes each set into one row of B (row q_n holds set n from its threshold
/// on), zero-filling other rows, with a blocking step per stage that greedily
/// maximizes the diagonal convergences below q_n over a bounded assignment
/// space (ties to the lexicographically least assignment).
SpectorResult spector_code(const std::vector<sets::Oracle>& sets_to_code,
                           const std::vector<u64>& q, u64 col_bound, u64 stage_budget,
                           u64 ext_len);

/// Row readback; throws Error when the position was never decided.
u8 spector_row_bit(const SpectorResult& r, u64 row, u64 col);

}  // namespace cohlab::constructions
