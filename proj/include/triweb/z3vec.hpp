#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace triweb {

/// Vector over Z₃ of fixed length, bit-sliced into two planes.
///
/// A digit d is stored as (hi, lo) = (d == 2, d == 1). Addition runs 64
/// coordinates per word. Text form: one base-3 digit per coordinate,
/// coordinate 0 first.
class Z3Vec {
 public:
  Z3Vec() = default;
  explicit Z3Vec(std::size_t length);

  static Z3Vec from_digits(std::string_view digits);

  std::size_t length() const noexcept { return length_; }
  unsigned get(std::size_t i) const;
  void set(std::size_t i, unsigned digit);
  bool is_zero() const noexcept;
  std::string to_digits() const;

  Z3Vec& operator+=(const Z3Vec& other);
  friend Z3Vec operator+(Z3Vec a, const Z3Vec& b) {
    a += b;
    return a;
  }
  Z3Vec negated() const;

  std::span<const std::uint64_t> lo() const noexcept { return lo_; }
  std::span<const std::uint64_t> hi() const noexcept { return hi_; }

  bool operator==(const Z3Vec& other) const = default;
  std::uint64_t fingerprint() const noexcept;

 private:
  std::size_t length_ = 0;
  std::vector<std::uint64_t> lo_;
  std::vector<std::uint64_t> hi_;
};

/// Plane-wise Z₃ addition on raw words: out = a + b, all spans of equal size.
void z3_add_words(std::span<const std::uint64_t> a_lo, std::span<const std::uint64_t> a_hi,
                  std::span<const std::uint64_t> b_lo, std::span<const std::uint64_t> b_hi,
                  std::span<std::uint64_t> out_lo, std::span<std::uint64_t> out_hi);

}  // namespace triweb
