#include "cohlab/constructions/cohesive.hpp"

#include "cohlab/errors.hpp"

namespace cohlab::constructions {

CohesiveOutput cohesive_from_path(const trees::UniformFamily& r,
                                  const sets::ApproxSet& f, u64 count,
                                  u64 search_bound) {
  // Stabilization precondition. A declared modulus is spot-checked on the
  // constrained indices; without one the settled tail is verified after the
  // construction below.
  if (f.has_modulus()) {
    std::vector<u64> ks;
    for (u64 k = 0; k < r.count(); ++k) ks.push_back(k);
    u64 up_to = 0;
    for (u64 k = 0; k < r.count(); ++k) up_to = std::max(up_to, *f.modulus_at(k));
    f.spot_check_modulus(ks, std::min(search_bound, up_to + 16));
  }

  CohesiveOutput out;
  out.elements.reserve(count);
  for (u64 stage = 0; stage < count; ++stage) {
    u64 constrained = std::min(stage, r.count());
    u64 from = stage == 0 ? 0 : out.elements.back() + 1;
    bool found = false;
    for (u64 s = from; s < search_bound; ++s) {
      bool ok = true;
      for (u64 k = 0; k < constrained; ++k) {
        if (r.member(k, s) != (f.approx(k, s) == 1)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        CohesiveStage log;
        log.stage = stage;
        log.chosen = s;
        for (u64 k = 0; k < constrained; ++k)
          log.pattern.push_back(static_cast<u8>(f.approx(k, s)));
        out.per_stage_log.push_back(std::move(log));
        out.elements.push_back(s);
        found = true;
        break;
      }
    }
    if (!found)
      throw SearchExhausted(stage, "no admissible value below " +
                                       std::to_string(search_bound) + " at stage " +
                                       std::to_string(stage));
  }
  if (!f.has_modulus() && out.elements.size() >= 2) {
    u64 a = out.elements[out.elements.size() - 2];
    u64 b = out.elements.back();
    for (u64 k = 0; k < r.count(); ++k) {
      if (f.approx(k, a) != f.approx(k, b))
        throw Unstable("approximation still moving at index " + std::to_string(k) +
                       " across the final elements");
    }
  }
  return out;
}

}  // namespace cohlab::constructions
