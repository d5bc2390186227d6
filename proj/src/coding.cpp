#include "cohlab/constructions/coding.hpp"

#include <algorithm>

#include "cohlab/errors.hpp"
#include "cohlab/pairing.hpp"
#include "cohlab/vm/godel.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::constructions {

RegularizedSet regularize(const sets::Oracle& c,
                          const std::vector<std::pair<u64, u64>>& anchors) {
  RegularizedSet out;
  u64 prev_pair = 0;
  bool first = true;
  for (auto& [a, s] : anchors) {
    u64 p = pair_u64(a, s);
    if (!first && p <= prev_pair) throw Error("non-increasing anchors");
    first = false;
    prev_pair = p;
    u64 bit = c.contains(a) ? 1 : 0;
    out.triples.push_back(pair_u64(p, bit));
    out.components.push_back({a, s, bit});
  }
  return out;
}

std::optional<bool> regular_decode(const RegularizedSet& d, u64 a) {
  for (u64 t : d.triples) {
    auto [p, bit] = unpair_u64(t);
    auto [aa, s] = unpair_u64(p);
    (void)s;
    if (aa == a) return bit == 1;
  }
  return std::nullopt;
}

namespace {

/// Partial oracle over a decided-position map; everything else is Blocked.
class MapView final : public vm::OracleView {
 public:
  explicit MapView(const std::map<u64, u8>& m) : m_(m) {}
  Answer ask(u64 v) const override {
    auto it = m_.find(v);
    if (it == m_.end()) return Answer::Blocked;
    return it->second ? Answer::Yes : Answer::No;
  }

 private:
  const std::map<u64, u8>& m_;
};

u64 count_convergent(const std::map<u64, u8>& decided, u64 q_bound, u64 budget,
                     std::vector<u64>* which) {
  MapView view(decided);
  u64 n = 0;
  for (u64 e = 0; e < q_bound; ++e) {
    vm::Program p = vm::decode(Nat(e));
    std::vector<u64> args(p.arity, e);
    if (vm::run(p, args, view, budget).halted()) {
      ++n;
      if (which) which->push_back(e);
    }
  }
  return n;
}

}  // namespace

SpectorResult spector_code(const std::vector<sets::Oracle>& sets_to_code,
                           const std::vector<u64>& q, u64 col_bound, u64 stage_budget,
                           u64 ext_len) {
  if (sets_to_code.size() > q.size())
    throw Error("need one row index per coded set");
  if (q.empty() || q[0] != 0) throw Error("row indices must start at 0");
  for (size_t i = 1; i < q.size(); ++i)
    if (q[i] <= q[i - 1]) throw Error("row indices must increase");

  SpectorResult r;
  r.q = q;
  r.col_bound = col_bound;
  r.stage_budget = stage_budget;
  r.ext_len = ext_len;

  size_t m = sets_to_code.size();
  for (size_t n = 0; n < m; ++n) {
    u64 stage = n + 1;
    // Blocking: assign the first ext_len undecided positions, maximizing the
    // diagonal convergences below q_n; lex-least assignment among maximizers.
    std::vector<u64> positions;
    u64 probe = 0;
    while (positions.size() < ext_len) {
      if (!r.decided.count(probe)) positions.push_back(probe);
      ++probe;
    }
    SpectorBlocking blk;
    blk.stage = stage;
    blk.positions = positions;
    blk.search_space = u64{1} << ext_len;
    u64 best_count = 0;
    std::vector<u8> best_bits(ext_len, 0);
    std::vector<u64> best_convergent;
    for (u64 mask = 0; mask < (u64{1} << ext_len); ++mask) {
      auto trial = r.decided;
      std::vector<u8> bits;
      for (u64 i = 0; i < ext_len; ++i) {
        u8 b = (mask >> (ext_len - 1 - i)) & 1;  // lex order: high bit first
        bits.push_back(b);
        trial[positions[i]] = b;
      }
      std::vector<u64> conv;
      u64 cnt = count_convergent(trial, q[n], stage_budget, &conv);
      if (cnt > best_count || mask == 0) {
        best_count = cnt;
        best_bits = bits;
        best_convergent = std::move(conv);
      }
    }
    for (u64 i = 0; i < ext_len; ++i) r.decided[positions[i]] = best_bits[i];
    blk.chosen_bits = best_bits;
    blk.convergent = best_convergent;
    r.blocking_log.push_back(std::move(blk));

    // Coding: row q_n takes set n's bits wherever still undecided; the
    // threshold marks the first column from which the row is pure.
    u64 threshold = 0;
    for (u64 x = 0; x < col_bound; ++x) {
      u64 pos = pair_u64(x, q[n]);
      if (r.decided.count(pos)) {
        if (r.decided[pos] != (sets_to_code[n].contains(x) ? 1 : 0)) threshold = x + 1;
      } else {
        r.decided[pos] = sets_to_code[n].contains(x) ? 1 : 0;
      }
    }
    r.thresholds.push_back(threshold);

    // Zero-fill the non-coded rows activated so far.
    u64 row_bound = n + 1 < q.size() ? q[n + 1] : q[m - 1] + 1;
    for (u64 y = 0; y < row_bound; ++y) {
      bool is_code_row = false;
      for (size_t j = 0; j <= n; ++j)
        if (q[j] == y) is_code_row = true;
      if (is_code_row) continue;
      for (u64 x = 0; x < col_bound; ++x) {
        u64 pos = pair_u64(x, y);
        if (!r.decided.count(pos)) r.decided[pos] = 0;
      }
    }
  }
  return r;
}

u8 spector_row_bit(const SpectorResult& r, u64 row, u64 col) {
  auto it = r.decided.find(pair_u64(col, row));
  if (it == r.decided.end())
    throw Error("position (" + std::to_string(col) + ", " + std::to_string(row) +
                ") was never decided");
  return it->second;
}

}  // namespace cohlab::constructions
