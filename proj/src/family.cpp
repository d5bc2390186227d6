#include "cohlab/trees/family.hpp"

#include <memory>

#include "cohlab/errors.hpp"
#include "cohlab/sets/approx_set.hpp"
#include "cohlab/vm/run.hpp"

namespace cohlab::trees {

UniformFamily UniformFamily::from_program(vm::Program p, sets::Oracle env,
                                          u64 step_budget, u64 count) {
  if (p.arity != 2) throw Error("family program must have arity 2");
  UniformFamily f;
  f.prog_ = ProgBacking{p, env, step_budget};
  f.fn_ = [p = std::move(p), env = std::move(env), step_budget](u64 k, u64 x) {
    u64 args[2] = {k, x};
    auto r = vm::run(p, args, env.view(), step_budget);
    if (!r.halted())
      throw OracleBudgetError("family program exceeded its budget at (" +
                              std::to_string(k) + ", " + std::to_string(x) + ")");
    return r.value != 0;
  };
  f.count_ = count;
  return f;
}

UniformFamily UniformFamily::from_grid(u64 count, u64 width, std::vector<u8> bits) {
  if (count == 0 || width == 0 || bits.size() != count * width)
    throw Error("grid dimensions do not match the bit vector");
  UniformFamily f;
  f.grid_ = Grid{width, bits};
  f.fn_ = [count, width, bits = std::move(bits)](u64 k, u64 x) {
    return bits[k * width + (x % width)] != 0;
  };
  f.count_ = count;
  return f;
}

UniformFamily UniformFamily::from_fn(MemberFn fn, u64 count) {
  UniformFamily f;
  f.fn_ = std::move(fn);
  f.count_ = count;
  return f;
}

bool UniformFamily::member(u64 k, u64 x) const {
  if (k >= count_) return true;  // finite families padded with full relations
  return fn_(k, x);
}

namespace {

// Bit grid R_k(x) for constrained k, x < bound, evaluated once. The witness
// counting below then never re-runs family programs. Only indices below the
// family count constrain patterns; beyond it every value matches.
struct FamilyBits {
  u64 constrained;
  u64 bound;
  std::vector<u8> bits;
};

std::shared_ptr<FamilyBits> family_bits(const UniformFamily& r, u64 depth, u64 bound) {
  auto fb = std::make_shared<FamilyBits>();
  fb->constrained = std::min(depth, r.count());
  fb->bound = bound;
  fb->bits.resize(fb->constrained * bound);
  for (u64 k = 0; k < fb->constrained; ++k)
    for (u64 x = 0; x < bound; ++x) fb->bits[k * bound + x] = r.member(k, x) ? 1 : 0;
  return fb;
}

u64 pattern_witnesses(const FamilyBits& fb, const BinaryString& s, u64 up_to) {
  u64 n = 0;
  for (u64 x = 0; x < up_to; ++x) {
    bool match = true;
    u64 checked = std::min<u64>(s.length(), fb.constrained);
    for (u64 k = 0; k < checked; ++k) {
      if ((fb.bits[k * fb.bound + x] != 0) != (s.bit(k) == 1)) {
        match = false;
        break;
      }
    }
    if (match) ++n;
  }
  return n;
}

}  // namespace

TruncatedTree tree_from_family(const UniformFamily& r, u64 witness_bound, u64 depth) {
  auto fb = family_bits(r, depth, witness_bound);
  auto pred = [fb, witness_bound](const BinaryString& s) {
    return pattern_witnesses(*fb, s, witness_bound) > s.length();
  };
  return TruncatedTree::from_predicate(std::move(pred), depth);
}

sets::ApproxSet path_approx_from_family(const UniformFamily& r, u64 witness_bound,
                                        u64 depth) {
  auto fb = family_bits(r, depth, witness_bound);
  // leftmost[s] = code of the lex-least depth-length pattern with more than
  // `depth` witnesses below s, or 0 when none exists yet.
  auto leftmost = std::make_shared<std::vector<u64>>(witness_bound + 1, 0);
  for (u64 s = 0; s <= witness_bound; ++s) {
    for (u64 c = u64{1} << depth; c < (u64{2} << depth); ++c) {
      BinaryString cand = BinaryString::from_code(c);
      if (pattern_witnesses(*fb, cand, s) > depth) {
        (*leftmost)[s] = c;
        break;
      }
    }
  }
  auto fn = [leftmost, witness_bound, depth](u64 k, u64 s) -> int {
    u64 c = (*leftmost)[std::min(s, witness_bound)];
    if (c == 0 || k >= depth) return 0;
    BinaryString path = BinaryString::from_code(c);
    return path.bit(k) ? 1 : 0;
  };
  return sets::ApproxSet::from_fn(std::move(fn)).with_modulus(witness_bound);
}

}  // namespace cohlab::trees
