#include "triweb/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace triweb {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t width) { return (width + kWordBits - 1) / kWordBits; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

BitVec::BitVec(std::size_t width) : width_(width), words_(words_for(width), 0) {}

BitVec BitVec::from_uint(std::uint64_t value, std::size_t width) {
  BitVec v(width);
  if (width < kWordBits && (value >> width) != 0) {
    throw std::invalid_argument("value does not fit in " + std::to_string(width) + " bits");
  }
  if (width > 0) v.words_[0] = value;
  return v;
}

BitVec BitVec::from_hex(std::string_view hex, std::size_t width) {
  BitVec v(width);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
    int d = hex_value(*it);
    if (d < 0) throw std::invalid_argument("invalid hex digit '" + std::string(1, *it) + "'");
    for (int b = 0; b < 4; ++b, ++bit) {
      if (((d >> b) & 1) == 0) continue;
      if (bit >= width) {
        throw std::invalid_argument("hex value '" + std::string(hex) + "' exceeds width " +
                                    std::to_string(width));
      }
      v.set(bit);
    }
  }
  return v;
}

BitVec BitVec::from_binary(std::string_view bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    char c = bits[bits.size() - 1 - i];
    if (c == '1') {
      v.set(i);
    } else if (c != '0') {
      throw std::invalid_argument("invalid binary digit '" + std::string(1, c) + "'");
    }
  }
  return v;
}

void BitVec::check_index(std::size_t i) const {
  if (i >= width_) {
    throw std::out_of_range("bit " + std::to_string(i) + " outside width " + std::to_string(width_));
  }
}

bool BitVec::get(std::size_t i) const {
  check_index(i);
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitVec::set(std::size_t i, bool value) {
  check_index(i);
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

bool BitVec::is_zero() const noexcept {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

std::size_t BitVec::popcount() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::uint64_t BitVec::to_uint() const {
  if (width_ > kWordBits) throw std::range_error("bit vector wider than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::string BitVec::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (width_ + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      std::size_t bit = d * 4 + b;
      if (bit < width_ && get(bit)) nibble |= 1U << b;
    }
    out[digits - 1 - d] = kDigits[nibble];
  }
  return out;
}

std::string BitVec::to_binary() const {
  std::string out(width_, '0');
  for (std::size_t i = 0; i < width_; ++i)
    if (get(i)) out[width_ - 1 - i] = '1';
  return out;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  if (other.width_ != width_) {
    throw std::invalid_argument("xor of bit vectors with widths " + std::to_string(width_) +
                                " and " + std::to_string(other.width_));
  }
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

bool BitVec::dot(const BitVec& other) const {
  if (other.width_ != width_) {
    throw std::invalid_argument("inner product of bit vectors with widths " +
                                std::to_string(width_) + " and " + std::to_string(other.width_));
  }
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return (std::popcount(acc) & 1) != 0;
}

BitVec BitVec::concat(const BitVec& low) const {
  BitVec out(width_ + low.width_);
  for (std::size_t w = 0; w < low.words_.size(); ++w) out.words_[w] = low.words_[w];
  const std::size_t shift = low.width_;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t word = words_[w];
    if (word == 0) continue;
    const std::size_t pos = w * kWordBits + shift;
    const std::size_t idx = pos / kWordBits;
    const std::size_t off = pos % kWordBits;
    out.words_[idx] |= word << off;
    if (off != 0 && idx + 1 < out.words_.size()) out.words_[idx + 1] |= word >> (kWordBits - off);
  }
  return out;
}

BitVec BitVec::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > width_) throw std::out_of_range("slice outside bit vector");
  BitVec out(count);
  for (std::size_t i = 0; i < count; ++i)
    if (get(offset + i)) out.set(i);
  return out;
}

std::strong_ordering BitVec::operator<=>(const BitVec& other) const {
  if (auto c = width_ <=> other.width_; c != 0) return c;
  for (std::size_t i = words_.size(); i-- > 0;) {
    if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t BitVec::hash() const noexcept {
  std::uint64_t h = mix(width_ + 0x9e3779b97f4a7c15ULL);
  for (auto w : words_) h = mix(h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
  return static_cast<std::size_t>(h);
}

}  // namespace triweb
