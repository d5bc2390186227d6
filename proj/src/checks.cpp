#include "cohlab/verify/checks.hpp"

#include <algorithm>
#include <map>

#include "cohlab/constructions/triangle.hpp"
#include "cohlab/errors.hpp"
#include "cohlab/pairing.hpp"
#include "cohlab/vm/godel.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::verify {

CohesiveCheck check_cohesive(const std::vector<u64>& elements,
                             const trees::UniformFamily& r, u64 horizon,
                             u64 min_tail) {
  CohesiveCheck out;
  if (elements.empty()) {
    out.verdict = Verdict::fail("empty element list");
    return out;
  }
  for (size_t i = 0; i < elements.size(); ++i) {
    if (i > 0 && elements[i] <= elements[i - 1]) {
      out.verdict = Verdict::fail("elements not strictly increasing at position " +
                                  std::to_string(i));
      return out;
    }
    if (elements[i] >= horizon) {
      out.verdict = Verdict::fail("element " + std::to_string(elements[i]) +
                                  " beyond the horizon");
      return out;
    }
  }
  for (u64 k = 0; k < r.count(); ++k) {
    u8 side = r.member(k, elements.back()) ? 1 : 0;
    u64 tail = 0;
    size_t i = elements.size();
    while (i > 0 && (r.member(k, elements[i - 1]) ? 1 : 0) == side) {
      ++tail;
      --i;
    }
    if (tail < min_tail) {
      out.verdict = Verdict::fail("relation " + std::to_string(k) +
                                  " oscillates up to the last element");
      return out;
    }
    out.thresholds.push_back(CohesiveThreshold{k, elements[i], side, tail});
  }
  out.verdict = Verdict::ok();
  return out;
}

Verdict check_least_rule(const std::vector<u64>& elements,
                         const trees::UniformFamily& r, const sets::ApproxSet& f) {
  auto admissible = [&](u64 stage, u64 s) {
    u64 constrained = std::min(stage, r.count());
    for (u64 k = 0; k < constrained; ++k)
      if (r.member(k, s) != (f.approx(k, s) == 1)) return false;
    return true;
  };
  for (size_t stage = 0; stage < elements.size(); ++stage) {
    u64 from = stage == 0 ? 0 : elements[stage - 1] + 1;
    for (u64 s = from; s < elements[stage]; ++s) {
      if (admissible(stage, s))
        return Verdict::fail("stage " + std::to_string(stage) + " skipped admissible " +
                             std::to_string(s));
    }
    if (!admissible(stage, elements[stage]))
      return Verdict::fail("stage " + std::to_string(stage) + " chose inadmissible " +
                           std::to_string(elements[stage]));
  }
  return Verdict::ok();
}

Verdict check_separator(const sets::ApproxSet& d, const sets::Sigma2Descriptor& first,
                        const sets::Sigma2Descriptor& second, u64 range, u64 budget,
                        u64 settle_window) {
  for (u64 x = 0; x < range; ++x) {
    int lim = d.limit(x, budget, settle_window);
    if (first.brute_force_member(x) && lim != 1)
      return Verdict::fail("member " + std::to_string(x) +
                           " of the included side is outside the separator");
    if (second.brute_force_member(x) && lim != 0)
      return Verdict::fail("member " + std::to_string(x) +
                           " of the excluded side is inside the separator");
  }
  return Verdict::ok();
}

Verdict check_path(const std::vector<trees::BinaryString>& chain,
                   const trees::TreeSnapshot& tree) {
  if (chain.size() != tree.depth() + 1)
    return Verdict::fail("expected one string per length 0.." +
                         std::to_string(tree.depth()));
  for (size_t l = 0; l < chain.size(); ++l) {
    if (chain[l].length() != l)
      return Verdict::fail("string at position " + std::to_string(l) +
                           " has length " + std::to_string(chain[l].length()));
    if (l > 0 && !chain[l - 1].is_prefix_of(chain[l]))
      return Verdict::fail("chain broken at length " + std::to_string(l));
    if (!tree.contains(chain[l]))
      return Verdict::fail("string " + chain[l].text() + " is not in the tree");
  }
  return Verdict::ok();
}

SuperlowCheck check_superlow(const constructions::ForcingTranscript& tr,
                             const trees::TruncatedTree& t,
                             const std::vector<vm::Program>& formulas,
                             const sets::Oracle& base,
                             const std::vector<u64>& annotated) {
  SuperlowCheck out;
  out.query_count = tr.queries.size();
  u64 n = formulas.size();
  out.query_bound = n >= 63 ? ~u64{0} : (u64{1} << n);

  trees::TreeSnapshot snap = t.materialize();
  if (tr.path_prefix.length() != t.depth()) {
    out.verdict = Verdict::fail("path does not reach the depth");
    return out;
  }
  for (size_t l = 0; l <= tr.path_prefix.length(); ++l) {
    if (!snap.contains(tr.path_prefix.prefix(l))) {
      out.verdict =
          Verdict::fail("path prefix of length " + std::to_string(l) + " not in tree");
      return out;
    }
  }
  if (out.query_count > out.query_bound) {
    out.verdict = Verdict::fail("query count " + std::to_string(out.query_count) +
                                " exceeds the bound " + std::to_string(out.query_bound));
    return out;
  }
  if (tr.jump_table.size() != n) {
    out.verdict = Verdict::fail("jump table length does not match the formula count");
    return out;
  }
  // Replay: the path extended by zeros, as a total oracle.
  std::map<u64, bool> path_bits;
  for (size_t i = 0; i < tr.path_prefix.length(); ++i)
    path_bits[i] = tr.path_prefix.bit(i) != 0;
  sets::Oracle path_set = sets::Oracle::table(std::move(path_bits), false);
  sets::Oracle joined = sets::Oracle::join(base, path_set);
  for (u64 e : annotated) {
    if (e >= n) {
      out.verdict = Verdict::fail("annotated index " + std::to_string(e) +
                                  " beyond the formula list");
      return out;
    }
    bool halts =
        vm::run(formulas[e], {}, joined.view(), tr.formula_step_cap).halted();
    if (halts != (tr.jump_table[e] == 1)) {
      out.verdict = Verdict::fail("jump bit " + std::to_string(e) +
                                  " disagrees with the replayed run");
      return out;
    }
  }
  out.verdict = Verdict::ok();
  return out;
}

namespace {

using constructions::InversionBudgets;
using trees::BinaryString;

BinaryString with_suffix(const BinaryString& base, u64 suffix, u64 count) {
  BinaryString out = base;
  for (u64 i = count; i-- > 0;) out = out.extended((suffix >> i) & 1);
  return out;
}

bool claims_converge(const BinaryString& tau, const BinaryString& window,
                     const sets::Oracle& a, u64 budget) {
  for (u64 e = 0; e < tau.length(); ++e) {
    if (tau.bit(e) == 0 && !constructions::index_converges(e, a, window, budget))
      return false;
  }
  return true;
}

}  // namespace

InversionCheck check_inversion(const constructions::InversionTranscript& tr,
                               const sets::Oracle& a) {
  InversionCheck out;
  const InversionBudgets& b = tr.budgets;
  const BinaryString& bp = tr.b_prefix;

  BinaryString sigma, tau;
  bool mode_b = true;
  size_t stage_i = 0;

  for (u64 s = 1; s <= b.stages; ++s, ++stage_i) {
    if (stage_i >= tr.stages.size()) {
      out.verdict = Verdict::fail("transcript is missing stage " + std::to_string(s));
      return out;
    }
    const auto& st = tr.stages[stage_i];
    if (st.stage != s || st.strategy_b != mode_b) {
      out.verdict = Verdict::fail("stage " + std::to_string(s) +
                                  " strategy disagrees with the replay");
      return out;
    }
    if (mode_b) {
      bool committed = false;
      if (sigma.length() < s) {
        u64 gap = s - sigma.length();
        u64 cand_count = gap >= 63 ? ~u64{0} : (u64{1} << gap);
        if (cand_count <= b.sigma_width_cap) {
          for (u64 suffix = 0; suffix < cand_count; ++suffix) {
            BinaryString cand = with_suffix(sigma, suffix, gap);
            if (claims_converge(tau, cand, a, s)) {
              // The committed bits must be what B actually holds.
              if (bp.length() < 2 * s || !cand.is_prefix_of(bp)) {
                out.verdict = Verdict::fail("committed bits at stage " +
                                            std::to_string(s) +
                                            " disagree with the b-prefix");
                return out;
              }
              BinaryString grown = cand;
              std::vector<u8> block;
              for (u64 k = 0; k < s; ++k) {
                u8 bit = bp.bit(cand.length() + k);
                grown = grown.extended(bit);
                block.push_back(bit);
              }
              out.decoded_c = block;  // later blocks extend earlier ones
              sigma = grown;
              committed = true;
              mode_b = false;
              break;
            }
          }
        }
      }
      if (committed != st.success) {
        out.verdict =
            Verdict::fail("stage " + std::to_string(s) + " success bit disagrees");
        return out;
      }
    } else {
      std::vector<u64> claimed;
      for (u64 e = 0; e < tau.length(); ++e)
        if (tau.bit(e) == 0) claimed.push_back(e);
      for (u64 j = tau.length(); j < s; ++j) {
        claimed.push_back(j);
        bool realizable = false;
        for (u64 extra = 0; extra <= b.ext_len_cap && !realizable; ++extra) {
          for (u64 suffix = 0; suffix < (u64{1} << extra); ++suffix) {
            BinaryString w = with_suffix(sigma, suffix, extra);
            bool all = true;
            for (u64 e : claimed) {
              if (!constructions::index_converges(e, a, w, b.time_cap)) {
                all = false;
                break;
              }
            }
            if (all) {
              realizable = true;
              break;
            }
          }
        }
        if (realizable) {
          tau = tau.extended(0);
        } else {
          claimed.pop_back();
          tau = tau.extended(1);
        }
      }
      mode_b = true;
    }
    if (st.sigma_after != sigma.text() || st.tau_after != tau.text()) {
      out.verdict = Verdict::fail("stage " + std::to_string(s) +
                                  " histories disagree with the replay");
      return out;
    }
  }

  if (bp != sigma) {
    out.verdict = Verdict::fail("final b-prefix disagrees with the replay");
    return out;
  }
  if (tr.tau.size() != tau.length()) {
    out.verdict = Verdict::fail("final tau length disagrees");
    return out;
  }
  for (size_t e = 0; e < tau.length(); ++e) {
    if (tr.tau[e] != tau.bit(e) ||
        tr.jump_guess[e] != (tau.bit(e) == 0 ? 1 : 0)) {
      out.verdict = Verdict::fail("claim bits disagree at " + std::to_string(e));
      return out;
    }
  }
  // Re-run every recorded convergence witness.
  for (const auto& st : tr.stages) {
    for (const auto& w : st.witnesses) {
      BinaryString window = BinaryString::from_text(w.window);
      if (!constructions::index_converges(w.e, a, window, b.time_cap)) {
        out.verdict =
            Verdict::fail("witness for index " + std::to_string(w.e) + " fails replay");
        return out;
      }
      ++out.claims_replayed;
    }
  }
  out.verdict = Verdict::ok();
  return out;
}

SpectorCheck check_spector(const constructions::SpectorResult& r,
                           const std::vector<sets::Oracle>& sets_coded) {
  SpectorCheck out;
  size_t m = sets_coded.size();
  if (r.thresholds.size() != m || r.blocking_log.size() != m) {
    out.verdict = Verdict::fail("log sizes do not match the set count");
    return out;
  }
  // Row agreement above thresholds.
  for (size_t n = 0; n < m; ++n) {
    for (u64 x = r.thresholds[n]; x < r.col_bound; ++x) {
      auto it = r.decided.find(pair_u64(x, r.q[n]));
      if (it == r.decided.end()) {
        out.verdict = Verdict::fail("row " + std::to_string(r.q[n]) +
                                    " undecided at column " + std::to_string(x));
        return out;
      }
      if ((it->second != 0) != sets_coded[n].contains(x)) {
        out.verdict = Verdict::fail("row " + std::to_string(r.q[n]) +
                                    " disagrees at column " + std::to_string(x));
        return out;
      }
    }
  }
  // Non-code rows are eventually zero.
  u64 row_bound = r.q[m - 1] + 1;
  for (u64 y = 0; y < row_bound; ++y) {
    bool code_row = false;
    for (size_t n = 0; n < m; ++n)
      if (r.q[n] == y) code_row = true;
    if (code_row) continue;
    u64 threshold = 0;
    for (u64 x = 0; x < r.col_bound; ++x) {
      auto it = r.decided.find(pair_u64(x, y));
      if (it != r.decided.end() && it->second != 0) threshold = x + 1;
    }
    if (threshold + 2 > r.col_bound) {
      out.verdict =
          Verdict::fail("row " + std::to_string(y) + " is not eventually zero");
      return out;
    }
    out.zero_row_thresholds.push_back(threshold);
  }
  // Blocking maximality over the recorded assignment space, replayed against
  // the state the construction had then (rebuilt from the log order).
  std::map<u64, u8> decided;
  for (size_t n = 0; n < m; ++n) {
    const auto& blk = r.blocking_log[n];
    struct MapView final : vm::OracleView {
      const std::map<u64, u8>& m;
      explicit MapView(const std::map<u64, u8>& mm) : m(mm) {}
      Answer ask(u64 v) const override {
        auto it = m.find(v);
        if (it == m.end()) return Answer::Blocked;
        return it->second ? Answer::Yes : Answer::No;
      }
    };
    auto count_conv = [&](const std::map<u64, u8>& trial) {
      MapView view(trial);
      u64 cnt = 0;
      for (u64 e = 0; e < r.q[n]; ++e) {
        vm::Program p = vm::decode(Nat(e));
        std::vector<u64> args(p.arity, e);
        if (vm::run(p, args, view, r.stage_budget).halted()) ++cnt;
      }
      return cnt;
    };
    u64 best = 0;
    u64 chosen_count = 0;
    u64 chosen_mask = 0;
    for (u64 i = 0; i < blk.chosen_bits.size(); ++i)
      chosen_mask = (chosen_mask << 1) | blk.chosen_bits[i];
    u64 best_mask = 0;
    bool have_best = false;
    for (u64 mask = 0; mask < (u64{1} << blk.positions.size()); ++mask) {
      auto trial = decided;
      for (u64 i = 0; i < blk.positions.size(); ++i)
        trial[blk.positions[i]] = (mask >> (blk.positions.size() - 1 - i)) & 1;
      u64 cnt = count_conv(trial);
      if (!have_best || cnt > best) {
        best = cnt;
        best_mask = mask;
        have_best = true;
      }
      if (mask == chosen_mask) chosen_count = cnt;
    }
    if (chosen_count != best || chosen_mask != best_mask) {
      out.verdict = Verdict::fail("blocking choice at stage " +
                                  std::to_string(blk.stage) + " is not the least maximizer");
      return out;
    }
    for (u64 i = 0; i < blk.positions.size(); ++i)
      decided[blk.positions[i]] = blk.chosen_bits[i];
    // Re-apply the coding and zero-fill exactly as the construction does.
    for (u64 x = 0; x < r.col_bound; ++x) {
      u64 pos = pair_u64(x, r.q[n]);
      if (!decided.count(pos)) decided[pos] = sets_coded[n].contains(x) ? 1 : 0;
    }
    u64 rb = n + 1 < r.q.size() ? r.q[n + 1] : r.q[m - 1] + 1;
    for (u64 y = 0; y < rb; ++y) {
      bool code_row = false;
      for (size_t j = 0; j <= n; ++j)
        if (r.q[j] == y) code_row = true;
      if (code_row) continue;
      for (u64 x = 0; x < r.col_bound; ++x) {
        u64 pos = pair_u64(x, y);
        if (!decided.count(pos)) decided[pos] = 0;
      }
    }
  }
  out.verdict = Verdict::ok();
  return out;
}

TriangleRoundtrip roundtrip_triangle(const trees::TruncatedTree& t,
                                     const TriangleBudgets& budgets) {
  using namespace constructions;
  TriangleRoundtrip out;
  auto [a0, a1] = sigma2_from_tree(t);
  // The separator must contain the strings whose 1-side outlives the 0-side.
  sets::ApproxSet f = separation_guess(a1, a0);
  sets::ApproxSet fpath = stable_membership_approx(a1, a0);
  u64 code_space = u64{2} << t.depth();
  trees::UniformFamily fam = derived_family(f, code_space);
  u64 count = code_space + budgets.extra_elements;
  CohesiveOutput c = cohesive_from_path(fam, fpath, count, budgets.search_bound);
  out.cohesive_elements = c.elements;
  sets::ApproxSet d = separator_from_cohesive(f, c.elements, code_space);
  out.chain = settled_selection_chain(d, t.depth(), c.elements.back(), 1);

  const trees::TreeSnapshot& settled = t.stage(t.stage_count() - 1);
  out.verdict = check_path(out.chain, settled);
  return out;
}

}  // namespace cohlab::verify
