#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

#include "triweb/bitvec.hpp"
#include "triweb/core.hpp"
#include "triweb/z3vec.hpp"

namespace triweb {

// ---------------------------------------------------------------------------
// Linear xor hashing

/// Keys a¹…aʳ of the linear hash h(x) = (⟨a¹,x⟩, …, ⟨aʳ,x⟩) mod 2.
/// Output bit j of h(x) is ⟨a^(j+1), x⟩.
class XorHashKeys {
 public:
  XorHashKeys() = default;
  XorHashKeys(std::vector<BitVec> keys, std::size_t input_width);

  std::size_t input_width() const noexcept { return input_width_; }
  std::size_t output_width() const noexcept { return keys_.size(); }
  std::span<const BitVec> keys() const noexcept { return keys_; }

  BitVec apply(const BitVec& x) const;
  /// Same as apply(x).to_uint(); requires output_width() <= 64.
  std::uint64_t apply_uint(const BitVec& x) const;

 private:
  std::vector<BitVec> keys_;
  std::size_t input_width_ = 0;
};

BitVec hash_apply(const XorHashKeys& keys, const BitVec& x);

/// Uniform keys from the seeded generator. output_width 0 gives the constant hash.
XorHashKeys sample_hash(std::size_t input_width, std::size_t output_width, std::uint64_t seed);

struct BucketLoadStats {
  /// Load of each of the R buckets.
  std::vector<std::size_t> bucket_loads;
  /// element_histogram[s] = number of elements x with |B_h(x)| = s; sums to n.
  std::vector<std::size_t> element_histogram;
  /// Elements x with |B_h(x)| >= 2n/R + k.
  std::size_t overloaded_count = 0;
  double threshold = 0.0;
};

/// Bucket statistics of the set under h with R = 2^r buckets.
BucketLoadStats bucket_load_stats(const XorHashKeys& keys, std::span<const BitVec> set, double k);

// ---------------------------------------------------------------------------
// Combinatorial designs

enum class DesignStrategy { RandomizedVerified, Polynomial };

struct DesignOptions {
  /// Largest m whose O(m^2) pairwise verification is attempted.
  std::size_t max_verified_sets = 8192;
  /// Resampling rounds before giving up on the randomized strategy.
  std::size_t max_resample_rounds = 64;
};

/// m sets over [universe], all of size set_size, pairwise intersections at
/// most intersection_bound.
struct DesignFamily {
  std::size_t m = 0;
  std::size_t universe = 0;
  std::size_t set_size = 0;
  std::size_t intersection_bound = 0;
  double c = 0.0;
  DesignStrategy strategy = DesignStrategy::Polynomial;
  /// Polynomial strategy: field size and polynomial degree (0 otherwise).
  std::size_t field_size = 0;
  std::size_t degree = 0;
  /// Sorted members of each set.
  std::vector<std::vector<std::uint32_t>> sets;

  /// intersection_bound / set_size.
  double intersection_ratio() const;
};

/// Randomized: |S_i| = c² L, universe 50 c³ L, bound 2 c L with L = ceil(lg m);
/// every pair is checked and offending sets are resampled.
/// Polynomial: S_i is the graph {(x, p_i(x))} of the i-th polynomial of degree
/// <= d over GF(q); bound d with d/q <= 2/c and q^(d+1) >= m, universe q².
DesignFamily build_design(std::size_t m, double c, DesignStrategy strategy, std::uint64_t seed,
                          const DesignOptions& options = {});

struct DesignCheck {
  bool ok = false;
  std::size_t max_intersection = 0;
  std::size_t violating_pairs = 0;
  bool sizes_ok = false;
  bool universe_ok = false;
};

/// Exhaustive pairwise check via an inverted index (cost Σ_u deg(u)²).
DesignCheck verify_design(const DesignFamily& family);

/// Decimal number with digit 1 exactly at the positions of S_i.
BigInt design_label_decimal(const DesignFamily& family, std::size_t i);
/// Characteristic vector of S_i, width = universe.
BitVec design_label_binary(const DesignFamily& family, std::size_t i);
/// Z₃ vector with 1 at the positions of S_i, length = universe.
Z3Vec design_label_ternary(const DesignFamily& family, std::size_t i);

using DesignLabel = std::variant<BitVec, BigInt, Z3Vec>;
/// base 2, 10 or 3; anything else throws std::invalid_argument.
DesignLabel design_to_label(const DesignFamily& family, std::size_t i, int base);

void write_design(std::ostream& out, const DesignFamily& family);
DesignFamily read_design(std::istream& in);

// ---------------------------------------------------------------------------
// Small-bias / almost k-wise independent bits

/// Parameters of the powering generator. The seed is a pair (x, y) of
/// GF(2^s) elements packed as x | y << s, and bit i of the output is ⟨x^i, y⟩.
/// Its bias is at most n / 2^s, so s is the least with 2^s >= n / ε for
/// ε = α · 2^(-k/2); any k output bits are then α-close to uniform.
struct SmallBiasSpec {
  std::size_t n = 0;
  unsigned k = 4;
  double alpha = 0.25;
  std::size_t field_bits = 1;
  std::size_t seed_bits = 2;
};

SmallBiasSpec make_small_bias_spec(std::size_t n, unsigned k, double alpha);

/// Evaluates generator bits for one spec; cheap to copy.
class SmallBiasGenerator {
 public:
  explicit SmallBiasGenerator(const SmallBiasSpec& spec);

  const SmallBiasSpec& spec() const noexcept { return spec_; }
  /// Output bit i for the given seed.
  bool bit(std::uint64_t seed, std::uint64_t i) const;
  /// All n output bits.
  BitVec bits(std::uint64_t seed) const;

 private:
  void check_seed(std::uint64_t seed) const;
  std::uint64_t multiply(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t power(std::uint64_t x, std::uint64_t e) const;

  SmallBiasSpec spec_;
  std::uint64_t modulus_ = 0;  // irreducible polynomial of degree field_bits
  std::uint64_t barrett_ = 0;
};

BitVec small_bias_bits(const SmallBiasSpec& spec, std::uint64_t seed);

/// Least irreducible polynomial of degree s over GF(2), 1 <= s <= 32, as a bit mask.
std::uint64_t irreducible_polynomial(std::size_t s);

inline constexpr std::size_t kDefaultSeedCap = 32;

/// Every seed in [0, 2^seed_bits) exactly once, ascending.
class SeedRange {
 public:
  class iterator {
   public:
    using value_type = std::uint64_t;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    explicit iterator(std::uint64_t v) : v_(v) {}
    std::uint64_t operator*() const { return v_; }
    iterator& operator++() {
      ++v_;
      return *this;
    }
    iterator operator++(int) {
      auto tmp = *this;
      ++v_;
      return tmp;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint64_t v_ = 0;
  };

  explicit SeedRange(std::uint64_t count) : count_(count) {}
  iterator begin() const { return iterator(0); }
  iterator end() const { return iterator(count_); }
  std::uint64_t size() const { return count_; }

 private:
  std::uint64_t count_;
};

SeedRange enumerate_seeds(std::size_t seed_bits, std::size_t cap = kDefaultSeedCap);
SeedRange enumerate_seeds(const SmallBiasSpec& spec, std::size_t cap = kDefaultSeedCap);

/// Fixed bijection of [0, 2^bits); the k-th seed of a scrambled enumeration.
std::uint64_t scrambled_seed(std::uint64_t k, std::size_t bits);

}  // namespace triweb
