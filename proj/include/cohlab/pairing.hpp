#pragma once

#include <utility>

#include "cohlab/nat.hpp"

namespace cohlab {

/// Cantor pairing, pair(x,y) = (x+y)(x+y+1)/2 + x. Bijection N x N -> N.
u64 pair_u64(u64 x, u64 y);  // throws EncodeError when the result overflows
std::pair<u64, u64> unpair_u64(u64 n);

Nat pair_nat(const Nat& x, const Nat& y);
std::pair<Nat, Nat> unpair_nat(const Nat& n);

/// Nested triple <a,s,i> = pair(pair(a,s),i), monotone in each coordinate.
u64 triple_u64(u64 a, u64 s, u64 i);

}  // namespace cohlab
