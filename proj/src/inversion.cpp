#include "cohlab/constructions/inversion.hpp"

#include <optional>

#include "cohlab/errors.hpp"
#include "cohlab/vm/godel.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::constructions {

bool index_converges(u64 e, const sets::Oracle& base,
                     const trees::BinaryString& window, u64 step_budget) {
  vm::Program p = vm::decode(Nat(e));
  std::vector<u64> args(p.arity, e);
  vm::WindowView w(window.bits());
  vm::JoinView join(base.view(), w);
  return vm::run(p, args, join, step_budget).halted();
}

namespace {

using trees::BinaryString;

// Appends `count` suffix bits enumerated in lex order (0 first).
BinaryString with_suffix(const BinaryString& base, u64 suffix, u64 count) {
  BinaryString out = base;
  for (u64 i = count; i-- > 0;) out = out.extended((suffix >> i) & 1);
  return out;
}

struct WitnessSearch {
  std::optional<BinaryString> window;
  std::vector<InversionWitness> runs;
};

// Bounded search for one window extending sigma under which every claimed
// index converges within the time cap. Length-then-lex order, so the found
// witness is the least one in the searched space.
WitnessSearch find_witness(const std::vector<u64>& claimed, const sets::Oracle& a,
                           const BinaryString& sigma, const InversionBudgets& b) {
  for (u64 extra = 0; extra <= b.ext_len_cap; ++extra) {
    for (u64 suffix = 0; suffix < (u64{1} << extra); ++suffix) {
      BinaryString w = with_suffix(sigma, suffix, extra);
      WitnessSearch res;
      bool all = true;
      for (u64 e : claimed) {
        vm::Program p = vm::decode(Nat(e));
        std::vector<u64> args(p.arity, e);
        vm::WindowView wv(w.bits());
        vm::JoinView join(a.view(), wv);
        auto r = vm::run(p, args, join, b.time_cap);
        if (!r.halted()) {
          all = false;
          break;
        }
        res.runs.push_back(InversionWitness{e, w.text(), r.steps});
      }
      if (all) {
        res.window = w;
        return res;
      }
    }
  }
  return {};
}

}  // namespace

InversionTranscript friedberg_invert(const sets::Oracle& a, const sets::Oracle& c,
                                     const InversionBudgets& budgets) {
  InversionTranscript tr;
  tr.budgets = budgets;

  BinaryString sigma, tau;
  bool mode_b = true;

  for (u64 s = 1; s <= budgets.stages; ++s) {
    InversionStage st;
    st.stage = s;
    st.strategy_b = mode_b;

    if (mode_b) {
      if (sigma.length() < s) {
        u64 gap = s - sigma.length();
        u64 cand_count = gap >= 63 ? ~u64{0} : (u64{1} << gap);
        if (cand_count > budgets.sigma_width_cap) {
          st.width_capped = true;
        } else {
          for (u64 suffix = 0; suffix < cand_count; ++suffix) {
            BinaryString cand = with_suffix(sigma, suffix, gap);
            bool ok = true;
            for (u64 e = 0; e < tau.length(); ++e) {
              if (tau.bit(e) == 0 && !index_converges(e, a, cand, s)) {
                ok = false;
                break;
              }
            }
            if (ok) {
              st.success = true;
              st.found_sigma = cand.text();
              BinaryString grown = cand;
              std::string block;
              for (u64 k = 0; k < s; ++k) {
                u8 bit = c.contains(k) ? 1 : 0;
                grown = grown.extended(bit);
                block.push_back(bit ? '1' : '0');
              }
              st.c_block = block;
              sigma = grown;
              mode_b = false;
              break;
            }
          }
        }
      }
    } else {
      // Jump-coding strategy: extend tau to length s, greedily preferring
      // convergence claims (bit 0) whenever the bounded search realizes all
      // claims jointly.
      std::vector<u64> claimed;
      for (u64 e = 0; e < tau.length(); ++e)
        if (tau.bit(e) == 0) claimed.push_back(e);
      for (u64 j = tau.length(); j < s; ++j) {
        claimed.push_back(j);
        WitnessSearch ws = find_witness(claimed, a, sigma, budgets);
        if (ws.window) {
          tau = tau.extended(0);
          for (auto& w : ws.runs)
            if (w.e == j) st.witnesses.push_back(w);
        } else {
          claimed.pop_back();
          tau = tau.extended(1);
        }
      }
      st.success = true;
      mode_b = true;
    }

    st.sigma_after = sigma.text();
    st.tau_after = tau.text();
    tr.stages.push_back(std::move(st));
  }

  tr.b_prefix = sigma;
  for (size_t e = 0; e < tau.length(); ++e) {
    tr.tau.push_back(tau.bit(e));
    tr.jump_guess.push_back(tau.bit(e) == 0 ? 1 : 0);
  }
  return tr;
}

std::vector<u8> coded_fragment(const InversionTranscript& tr) {
  std::vector<u8> bits;
  for (const auto& st : tr.stages) {
    if (st.strategy_b && st.success) {
      bits.clear();
      for (char ch : st.c_block) bits.push_back(ch == '1' ? 1 : 0);
    }
  }
  return bits;
}

}  // namespace cohlab::constructions
