#pragma once

#include <compare>
#include <string>
#include <vector>

#include "cohlab/nat.hpp"

namespace cohlab::trees {

/// A finite 0/1 string with the prepend-1 numeric code: bits b0..b(l-1) code
/// as the number whose binary expansion is 1 b0 ... b(l-1). The empty string
/// codes as 1; codes are unique and order-embeddable.
class BinaryString {
 public:
  BinaryString() = default;
  explicit BinaryString(std::vector<u8> bits) : bits_(std::move(bits)) {}

  static BinaryString from_code(u64 code);  // throws Error on code 0
  static BinaryString from_text(std::string_view zeros_and_ones);

  u64 code() const;
  size_t length() const { return bits_.size(); }
  u8 bit(size_t i) const { return bits_[i]; }
  const std::vector<u8>& bits() const { return bits_; }

  BinaryString extended(u8 b) const;
  BinaryString prefix(size_t len) const;
  bool is_prefix_of(const BinaryString& other) const;
  bool extends(const BinaryString& other) const { return other.is_prefix_of(*this); }

  /// "0" then "1" at each position; shorter strings are not compared by this
  /// (use length_lex_less for the combined order).
  static bool lex_less(const BinaryString& a, const BinaryString& b);
  static bool length_lex_less(const BinaryString& a, const BinaryString& b);

  std::string text() const;  // "0110", "" for the empty string

  bool operator==(const BinaryString&) const = default;

 private:
  std::vector<u8> bits_;
};

}  // namespace cohlab::trees
