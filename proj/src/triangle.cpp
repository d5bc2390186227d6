#include "cohlab/constructions/triangle.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "cohlab/errors.hpp"

namespace cohlab::constructions {

namespace {

// Per-cone entry events: entered[c * stages + s] = 1 when some new node
// extending the string with code c appears at stage s (s >= 1).
struct EntryEvents {
  u64 code_space{0};
  u64 stages{0};
  std::vector<u8> entered;
  std::vector<u64> last;  // last entry stage per cone, 0 if never

  bool entered_at(u64 code, u64 s) const {
    if (code >= code_space || s >= stages) return false;
    return entered[code * stages + s] != 0;
  }
  bool entered_after(u64 code, u64 s) const {
    return code < code_space && last[code] > s;
  }
};

std::shared_ptr<EntryEvents> entry_events(const trees::TruncatedTree& t) {
  auto ev = std::make_shared<EntryEvents>();
  ev->stages = t.stage_count();
  ev->code_space = u64{4} << (t.depth() + 1);  // cones of children included
  ev->entered.assign(ev->code_space * ev->stages, 0);
  ev->last.assign(ev->code_space, 0);
  for (u64 s = 1; s < t.stage_count(); ++s) {
    const auto& prev = t.stage(s - 1);
    const auto& cur = t.stage(s);
    for (u64 c : cur.codes()) {
      if (prev.contains(c)) continue;
      for (u64 a = c;; a /= 2) {
        if (a < ev->code_space) {
          ev->entered[a * ev->stages + s] = 1;
          ev->last[a] = std::max(ev->last[a], s);
        }
        if (a <= 1) break;
      }
    }
  }
  return ev;
}

}  // namespace

std::pair<sets::Sigma2Descriptor, sets::Sigma2Descriptor> sigma2_from_tree(
    const trees::TruncatedTree& t) {
  if (!t.has_stages()) throw Error("sigma2_from_tree needs a stage family");
  auto ev = entry_events(t);
  u64 code_space = u64{2} << t.depth();
  u64 stages = t.stage_count();

  // Side b holds the strings whose (1-b)-side goes quiet after some stage s
  // while the b-side still produces a new node later than s.
  auto matrix = [ev](u8 b) {
    return [ev, b](u64 x, u64 s, u64 tt) -> bool {
      if (x == 0) return false;
      u64 grow_side = x * 2 + b;
      u64 die_side = x * 2 + (1 - b);
      bool die_quiet_here = tt <= s || !ev->entered_at(die_side, tt);
      return die_quiet_here && ev->entered_after(grow_side, s);
    };
  };
  return {sets::Sigma2Descriptor::from_fn(matrix(0), code_space, stages),
          sets::Sigma2Descriptor::from_fn(matrix(1), code_space, stages)};
}

sets::ApproxSet separation_guess(const sets::Sigma2Descriptor& first,
                                 const sets::Sigma2Descriptor& second) {
  u64 q = std::max(first.quant_range(), second.quant_range());
  auto in_at = [](const sets::Sigma2Descriptor& d, u64 x, u64 window) -> bool {
    u64 w = std::min(window, d.quant_range());
    for (u64 u = 0; u < w; ++u) {
      bool all = true;
      for (u64 v = 0; v < w; ++v) {
        if (!d.matrix(x, u, v)) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  };
  auto cache = std::make_shared<std::map<std::pair<u64, u64>, int>>();
  auto fn = [first, second, q, in_at, cache](u64 x, u64 s) -> int {
    u64 window = std::min(s + 1, q);
    auto key = std::make_pair(x, window);
    int base;
    auto it = cache->find(key);
    if (it != cache->end()) {
      base = it->second;
    } else {
      bool in0 = in_at(first, x, window);
      bool in1 = in_at(second, x, window);
      base = in0 && !in1 ? 1 : (in1 && !in0 ? 0 : 2);
      (*cache)[key] = base;
    }
    if (base == 2) return s % 2 == 0 ? 1 : 0;  // undecided: oscillate fairly
    return base;
  };
  return sets::ApproxSet::from_fn(std::move(fn));
}

trees::UniformFamily derived_family(const sets::ApproxSet& f, u64 x_range) {
  return trees::UniformFamily::from_fn(
      [f](u64 k, u64 s) { return f.approx(k, s) == 1; }, x_range);
}

sets::ApproxSet stable_membership_approx(const sets::Sigma2Descriptor& first,
                                         const sets::Sigma2Descriptor& second) {
  u64 q = std::max(first.quant_range(), second.quant_range());
  auto in_at = [](const sets::Sigma2Descriptor& d, u64 x, u64 window) -> bool {
    u64 w = std::min(window, d.quant_range());
    for (u64 u = 0; u < w; ++u) {
      bool all = true;
      for (u64 v = 0; v < w; ++v) {
        if (!d.matrix(x, u, v)) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
    return false;
  };
  auto cache = std::make_shared<std::map<std::pair<u64, u64>, int>>();
  auto fn = [first, second, q, in_at, cache](u64 x, u64 s) -> int {
    u64 window = std::min(s + 1, q);
    auto key = std::make_pair(x, window);
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
    int v = in_at(first, x, window) && !in_at(second, x, window) ? 1 : 0;
    (*cache)[key] = v;
    return v;
  };
  return sets::ApproxSet::from_fn(std::move(fn)).with_modulus(q);
}

sets::ApproxSet separator_from_cohesive(const sets::ApproxSet& f,
                                        const std::vector<u64>& cohesive_elements,
                                        u64 x_range) {
  if (cohesive_elements.empty()) throw NotCohesive("empty element list");
  for (size_t i = 1; i < cohesive_elements.size(); ++i)
    if (cohesive_elements[i] <= cohesive_elements[i - 1])
      throw NotCohesive("elements are not strictly increasing");
  // The derived family must have a constant tail of length >= 2 along C for
  // every x in range.
  for (u64 x = 0; x < x_range; ++x) {
    size_t n = cohesive_elements.size();
    if (n < 2) throw NotCohesive("need at least two elements");
    int lastv = f.approx(x, cohesive_elements[n - 1]);
    if (f.approx(x, cohesive_elements[n - 2]) != lastv)
      throw NotCohesive("no constant tail for index " + std::to_string(x));
  }
  auto elements = std::make_shared<std::vector<u64>>(cohesive_elements);
  u64 modulus = cohesive_elements.back();
  auto fn = [f, elements](u64 x, u64 s) -> int {
    auto it = std::upper_bound(elements->begin(), elements->end(), s);
    if (it == elements->begin()) return f.approx(x, 0);
    return f.approx(x, *std::prev(it));
  };
  return sets::ApproxSet::from_fn(std::move(fn)).with_modulus(modulus);
}

namespace {

trees::BinaryString stage_selection(const sets::ApproxSet& d, u64 depth, u64 s) {
  trees::BinaryString cur;
  for (u64 k = 0; k < depth; ++k)
    cur = cur.extended(static_cast<u8>(d.approx(cur.code(), s)));
  return cur;
}

}  // namespace

sets::ApproxSet path_from_separator(const sets::ApproxSet& d, u64 depth) {
  auto fn = [d, depth](u64 x, u64 s) -> int {
    if (x == 0) return 0;
    trees::BinaryString sel = stage_selection(d, depth, s);
    trees::BinaryString q = trees::BinaryString::from_code(x);
    if (q.length() > depth) return 0;
    return q.is_prefix_of(sel) ? 1 : 0;
  };
  sets::ApproxSet p = sets::ApproxSet::from_fn(std::move(fn));
  if (d.has_modulus()) {
    // The selection at stage s only consults d at prefix codes; it settles
    // once every consulted point has. Prefix codes are below 2^(depth+1).
    u64 depth_codes = u64{2} << depth;
    u64 worst = 0;
    for (u64 c = 1; c < depth_codes; ++c) worst = std::max(worst, *d.modulus_at(c));
    return p.with_modulus(worst);
  }
  return p;
}

std::vector<trees::BinaryString> settled_selection_chain(const sets::ApproxSet& d,
                                                         u64 depth, u64 budget,
                                                         u64 settle_window) {
  trees::BinaryString cur;
  std::vector<trees::BinaryString> chain{cur};
  for (u64 k = 0; k < depth; ++k) {
    int bit = d.limit(cur.code(), budget, settle_window);
    cur = cur.extended(static_cast<u8>(bit));
    chain.push_back(cur);
  }
  return chain;
}

}  // namespace cohlab::constructions
