#pragma once

#include "cohlab/nat.hpp"
#include "cohlab/vm/program.hpp"

namespace cohlab::vm {

/// Indexing of programs by naturals. Each instruction packs into one digit of
/// a base-6291456 number (op + 6*(operand + 16*aux)); the whole program is
/// code = 1 + pair(digits, pair(length, arity)). decode is total: any value
/// that is not a canonical code yields canonical_diverger(). encode(decode(n))
/// equals n exactly on canonical codes, and decode(encode(p)) == p always.
Nat encode(const Program& p);  // throws EncodeError if an operand exceeds the digit caps
Program decode(const Nat& index);

/// True when the index is a canonical code of a valid program.
bool is_valid_index(const Nat& index);

}  // namespace cohlab::vm
