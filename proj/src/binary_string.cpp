#include "cohlab/trees/binary_string.hpp"

#include <bit>

#include "cohlab/errors.hpp"

namespace cohlab::trees {

BinaryString BinaryString::from_code(u64 code) {
  if (code == 0) throw Error("0 is not a string code");
  int top = 63 - std::countl_zero(code);
  std::vector<u8> bits;
  bits.reserve(top);
  for (int i = top - 1; i >= 0; --i) bits.push_back((code >> i) & 1);
  return BinaryString(std::move(bits));
}

BinaryString BinaryString::from_text(std::string_view t) {
  std::vector<u8> bits;
  bits.reserve(t.size());
  for (char c : t) {
    if (c != '0' && c != '1') throw Error("binary string text must be 0s and 1s");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return BinaryString(std::move(bits));
}

u64 BinaryString::code() const {
  if (bits_.size() >= 63) throw Error("string too long for a 64-bit code");
  u64 c = 1;
  for (u8 b : bits_) c = (c << 1) | b;
  return c;
}

BinaryString BinaryString::extended(u8 b) const {
  std::vector<u8> bits = bits_;
  bits.push_back(b ? 1 : 0);
  return BinaryString(std::move(bits));
}

BinaryString BinaryString::prefix(size_t len) const {
  if (len > bits_.size()) throw Error("prefix longer than the string");
  return BinaryString(std::vector<u8>(bits_.begin(), bits_.begin() + len));
}

bool BinaryString::is_prefix_of(const BinaryString& other) const {
  if (bits_.size() > other.bits_.size()) return false;
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] != other.bits_[i]) return false;
  return true;
}

bool BinaryString::lex_less(const BinaryString& a, const BinaryString& b) {
  size_t n = std::min(a.length(), b.length());
  for (size_t i = 0; i < n; ++i) {
    if (a.bit(i) != b.bit(i)) return a.bit(i) < b.bit(i);
  }
  return a.length() < b.length();
}

bool BinaryString::length_lex_less(const BinaryString& a, const BinaryString& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return lex_less(a, b);
}

std::string BinaryString::text() const {
  std::string s;
  s.reserve(bits_.size());
  for (u8 b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace cohlab::trees
