#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace triweb {

/// Fixed-width bit string over GF(2).
///
/// Bit 0 is the least significant bit. Text forms are big-endian: the first
/// character of a hex or binary string holds the highest bits. Concatenation
/// `a.concat(b)` places `a` in the high bits, matching the `a∘b` notation.
/// Bits at positions >= width() are always zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t width);

  static BitVec from_uint(std::uint64_t value, std::size_t width);
  static BitVec from_hex(std::string_view hex, std::size_t width);
  static BitVec from_binary(std::string_view bits);

  std::size_t width() const noexcept { return width_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  bool is_zero() const noexcept;
  std::size_t popcount() const noexcept;

  /// Value as an integer; requires width() <= 64.
  std::uint64_t to_uint() const;
  /// ceil(width/4) lowercase hex digits, left-padded with zeros.
  std::string to_hex() const;
  std::string to_binary() const;

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  /// Inner product modulo 2: parity of (this AND other).
  bool dot(const BitVec& other) const;

  /// this∘low, i.e. this shifted up by low.width() with low in the bottom bits.
  BitVec concat(const BitVec& low) const;

  /// Bits [offset, offset + count) as a new vector of width count.
  BitVec slice(std::size_t offset, std::size_t count) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool operator==(const BitVec& other) const = default;
  std::strong_ordering operator<=>(const BitVec& other) const;

  std::size_t hash() const noexcept;

 private:
  void check_index(std::size_t i) const;

  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const noexcept { return v.hash(); }
};

}  // namespace triweb
