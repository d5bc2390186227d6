#include "cohlab/pairing.hpp"

#include <cmath>

#include "cohlab/errors.hpp"

namespace cohlab {

namespace {

using u128 = unsigned __int128;

u64 isqrt_u128(u128 n) {
  // Start from the floating-point estimate and correct; exact for our range.
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

u64 pair_u64(u64 x, u64 y) {
  u128 s = static_cast<u128>(x) + y;
  u128 v = s * (s + 1) / 2 + x;
  if (v > static_cast<u128>(~u64{0})) throw EncodeError("pair overflows 64 bits");
  return static_cast<u64>(v);
}

std::pair<u64, u64> unpair_u64(u64 n) {
  // w = floor((sqrt(8n+1)-1)/2) is the diagonal index.
  u128 m = static_cast<u128>(n) * 8 + 1;
  u64 root = isqrt_u128(m);
  u64 w = (root - 1) / 2;
  u128 t = static_cast<u128>(w) * (w + 1) / 2;
  u64 x = static_cast<u64>(n - t);
  u64 y = w - x;
  return {x, y};
}

Nat pair_nat(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + x;
}

std::pair<Nat, Nat> unpair_nat(const Nat& n) {
  Nat m = 8 * n + 1;
  Nat root = sqrt(m);
  Nat w = (root - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat x = n - t;
  Nat y = w - x;
  return {x, y};
}

u64 triple_u64(u64 a, u64 s, u64 i) { return pair_u64(pair_u64(a, s), i); }

}  // namespace cohlab
