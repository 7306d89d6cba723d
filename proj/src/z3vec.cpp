#include "triweb/z3vec.hpp"

#include <stdexcept>

namespace triweb {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t length) { return (length + kWordBits - 1) / kWordBits; }

}  // namespace

Z3Vec::Z3Vec(std::size_t length)
    : length_(length), lo_(words_for(length), 0), hi_(words_for(length), 0) {}

Z3Vec Z3Vec::from_digits(std::string_view digits) {
  Z3Vec v(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    char c = digits[i];
    if (c < '0' || c > '2') throw std::invalid_argument("invalid base-3 digit '" + std::string(1, c) + "'");
    v.set(i, static_cast<unsigned>(c - '0'));
  }
  return v;
}

unsigned Z3Vec::get(std::size_t i) const {
  if (i >= length_) throw std::out_of_range("Z3 coordinate out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (lo_[i / kWordBits] & mask) return 1;
  if (hi_[i / kWordBits] & mask) return 2;
  return 0;
}

void Z3Vec::set(std::size_t i, unsigned digit) {
  if (i >= length_) throw std::out_of_range("Z3 coordinate out of range");
  digit %= 3;
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  lo_[i / kWordBits] &= ~mask;
  hi_[i / kWordBits] &= ~mask;
  if (digit == 1) lo_[i / kWordBits] |= mask;
  if (digit == 2) hi_[i / kWordBits] |= mask;
}

bool Z3Vec::is_zero() const noexcept {
  for (std::size_t w = 0; w < lo_.size(); ++w)
    if ((lo_[w] | hi_[w]) != 0) return false;
  return true;
}

std::string Z3Vec::to_digits() const {
  std::string out(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) out[i] = static_cast<char>('0' + get(i));
  return out;
}

void z3_add_words(std::span<const std::uint64_t> a_lo, std::span<const std::uint64_t> a_hi,
                  std::span<const std::uint64_t> b_lo, std::span<const std::uint64_t> b_hi,
                  std::span<std::uint64_t> out_lo, std::span<std::uint64_t> out_hi) {
  for (std::size_t w = 0; w < out_lo.size(); ++w) {
    const std::uint64_t al = a_lo[w], ah = a_hi[w], bl = b_lo[w], bh = b_hi[w];
    const std::uint64_t za = ~(al | ah);
    const std::uint64_t zb = ~(bl | bh);
    // 0+1, 1+0, 2+2 give 1; 0+2, 2+0, 1+1 give 2.
    out_lo[w] = (za & bl) | (zb & al) | (ah & bh);
    out_hi[w] = (za & bh) | (zb & ah) | (al & bl);
  }
}

Z3Vec& Z3Vec::operator+=(const Z3Vec& other) {
  if (other.length_ != length_) throw std::invalid_argument("Z3 vectors of different lengths");
  z3_add_words(lo_, hi_, other.lo_, other.hi_, lo_, hi_);
  return *this;
}

Z3Vec Z3Vec::negated() const {
  Z3Vec out = *this;
  out.lo_.swap(out.hi_);
  return out;
}

std::uint64_t Z3Vec::fingerprint() const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL ^ length_;
  auto step = [&h](std::uint64_t w) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
  };
  for (std::size_t w = 0; w < lo_.size(); ++w) {
    step(lo_[w]);
    step(hi_[w]);
  }
  return h;
}

}  // namespace triweb
