#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace cohlab {

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u8 = std::uint8_t;

/// Unbounded natural. Used for program indices, which outgrow 64 bits for
/// programs longer than a couple of instructions. Never holds a negative.
using Nat = boost::multiprecision::cpp_int;

inline bool fits_u64(const Nat& n) {
  return n >= 0 && n <= Nat(~u64{0});
}

}  // namespace cohlab
