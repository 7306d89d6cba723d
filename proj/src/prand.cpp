#include "triweb/prand.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

#include "triweb/errors.hpp"
#include "triweb/rng.hpp"

namespace triweb {

// ---------------------------------------------------------------------------
// Linear xor hashing

XorHashKeys::XorHashKeys(std::vector<BitVec> keys, std::size_t input_width)
    : keys_(std::move(keys)), input_width_(input_width) {
  for (const auto& k : keys_) {
    if (k.width() != input_width_) {
      throw std::invalid_argument("hash key of width " + std::to_string(k.width()) +
                                  ", expected " + std::to_string(input_width_));
    }
  }
}

BitVec XorHashKeys::apply(const BitVec& x) const {
  if (x.width() != input_width_) {
    throw std::invalid_argument("hash input of width " + std::to_string(x.width()) + ", expected " +
                                std::to_string(input_width_));
  }
  BitVec out(keys_.size());
  for (std::size_t j = 0; j < keys_.size(); ++j)
    if (keys_[j].dot(x)) out.set(j);
  return out;
}

std::uint64_t XorHashKeys::apply_uint(const BitVec& x) const {
  if (keys_.size() > 64) throw std::range_error("hash output wider than 64 bits");
  return apply(x).to_uint();
}

BitVec hash_apply(const XorHashKeys& keys, const BitVec& x) { return keys.apply(x); }

XorHashKeys sample_hash(std::size_t input_width, std::size_t output_width, std::uint64_t seed) {
  auto rng = make_rng(seed, 0x4a5b);
  std::vector<BitVec> keys;
  keys.reserve(output_width);
  for (std::size_t j = 0; j < output_width; ++j) {
    BitVec key(input_width);
    for (std::size_t b = 0; b < input_width; b += 64) {
      const std::uint64_t word = rng();
      for (std::size_t t = 0; t < 64 && b + t < input_width; ++t)
        if ((word >> t) & 1U) key.set(b + t);
    }
    keys.push_back(std::move(key));
  }
  return XorHashKeys(std::move(keys), input_width);
}

BucketLoadStats bucket_load_stats(const XorHashKeys& keys, std::span<const BitVec> set, double k) {
  const std::size_t r = keys.output_width();
  if (r > 30) throw std::invalid_argument("too many buckets for load statistics");
  const std::size_t buckets = std::size_t{1} << r;
  BucketLoadStats stats;
  stats.bucket_loads.assign(buckets, 0);
  std::vector<std::uint64_t> hashed;
  hashed.reserve(set.size());
  for (const auto& x : set) {
    hashed.push_back(keys.apply_uint(x));
    ++stats.bucket_loads[hashed.back()];
  }
  const std::size_t max_load =
      stats.bucket_loads.empty() ? 0 : *std::max_element(stats.bucket_loads.begin(), stats.bucket_loads.end());
  stats.element_histogram.assign(max_load + 1, 0);
  const double n = static_cast<double>(set.size());
  stats.threshold = 2.0 * n / static_cast<double>(buckets) + k;
  for (auto h : hashed) {
    const std::size_t load = stats.bucket_loads[h];
    ++stats.element_histogram[load];
    if (static_cast<double>(load) >= stats.threshold) ++stats.overloaded_count;
  }
  return stats;
}

// ---------------------------------------------------------------------------
// Designs

double DesignFamily::intersection_ratio() const {
  return set_size == 0 ? 0.0 : static_cast<double>(intersection_bound) / static_cast<double>(set_size);
}

namespace {

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t p = 2; p * p <= q; ++p)
    if (q % p == 0) return false;
  return true;
}

std::uint64_t next_prime(std::uint64_t q) {
  while (!is_prime(q)) ++q;
  return q;
}

// Smallest q with q^e >= m.
std::uint64_t integer_root_ceil(std::uint64_t m, std::size_t e) {
  std::uint64_t q = 1;
  auto reaches = [&](std::uint64_t base) {
    unsigned __int128 acc = 1;
    for (std::size_t i = 0; i < e; ++i) {
      acc *= base;
      if (acc >= m) return true;
    }
    return acc >= m;
  };
  while (!reaches(q)) ++q;
  return q;
}

std::vector<std::uint32_t> random_subset(Rng& rng, std::size_t universe, std::size_t size) {
  // Floyd's algorithm.
  std::unordered_set<std::uint32_t> chosen;
  chosen.reserve(size * 2);
  for (std::size_t j = universe - size; j < universe; ++j) {
    auto t = static_cast<std::uint32_t>(uniform_int<std::size_t>(rng, 0, j));
    if (!chosen.insert(t).second) chosen.insert(static_cast<std::uint32_t>(j));
  }
  std::vector<std::uint32_t> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

template <class Counter>
void count_pairs(const DesignFamily& f, std::vector<Counter>& counts) {
  const std::size_t m = f.sets.size();
  std::vector<std::size_t> start(f.universe + 1, 0);
  for (const auto& s : f.sets)
    for (auto u : s) ++start[u + 1];
  for (std::size_t u = 0; u < f.universe; ++u) start[u + 1] += start[u];
  std::vector<std::uint32_t> members(start.back());
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (std::uint32_t i = 0; i < m; ++i)
    for (auto u : f.sets[i]) members[fill[u]++] = i;
  counts.assign(m * (m - 1) / 2, 0);
  for (std::size_t u = 0; u < f.universe; ++u) {
    for (std::size_t a = start[u]; a < start[u + 1]; ++a) {
      const std::size_t i = members[a];
      const std::size_t row = i * (2 * m - i - 1) / 2 - i - 1;
      for (std::size_t b = a + 1; b < start[u + 1]; ++b) ++counts[row + members[b]];
    }
  }
}

// Pairs (i, j), i < j, whose intersection exceeds the bound.
template <class Counter>
std::vector<std::pair<std::size_t, std::size_t>> offending_pairs(const DesignFamily& f,
                                                                 std::size_t* max_seen) {
  std::vector<Counter> counts;
  count_pairs(f, counts);
  std::vector<std::pair<std::size_t, std::size_t>> bad;
  const std::size_t m = f.sets.size();
  std::size_t pos = 0, worst = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j, ++pos) {
      worst = std::max<std::size_t>(worst, counts[pos]);
      if (counts[pos] > f.intersection_bound) bad.emplace_back(i, j);
    }
  }
  if (max_seen) *max_seen = worst;
  return bad;
}

std::vector<std::pair<std::size_t, std::size_t>> find_offending(const DesignFamily& f, std::size_t* max_seen) {
  if (f.set_size < std::numeric_limits<std::uint16_t>::max()) {
    return offending_pairs<std::uint16_t>(f, max_seen);
  }
  return offending_pairs<std::uint32_t>(f, max_seen);
}

DesignFamily build_randomized(std::size_t m, double c, std::uint64_t seed, const DesignOptions& options) {
  if (m > options.max_verified_sets) {
    throw std::invalid_argument("m = " + std::to_string(m) + " exceeds the pairwise verification cap " +
                                std::to_string(options.max_verified_sets));
  }
  const double lg = static_cast<double>(ceil_log2(m));
  DesignFamily f;
  f.m = m;
  f.c = c;
  f.strategy = DesignStrategy::RandomizedVerified;
  f.set_size = static_cast<std::size_t>(std::llround(c * c * lg));
  f.intersection_bound = static_cast<std::size_t>(std::floor(2.0 * c * lg));
  f.universe = static_cast<std::size_t>(std::ceil(50.0 * c * c * c * lg));
  if (f.universe > std::numeric_limits<std::uint32_t>::max()) throw std::length_error("design universe too large");
  auto rng = make_rng(seed, 0xd35);
  f.sets.reserve(m);
  for (std::size_t i = 0; i < m; ++i) f.sets.push_back(random_subset(rng, f.universe, f.set_size));
  for (std::size_t round = 0; round < options.max_resample_rounds; ++round) {
    const auto bad = find_offending(f, nullptr);
    if (bad.empty()) return f;
    for (auto [i, j] : bad) f.sets[j] = random_subset(rng, f.universe, f.set_size);
  }
  throw std::runtime_error("randomized design did not verify within the resampling budget");
}

DesignFamily build_polynomial(std::size_t m, double c) {
  std::uint64_t best_q = std::numeric_limits<std::uint64_t>::max();
  std::size_t best_d = 0;
  for (std::size_t d = 1; d <= 64; ++d) {
    const auto ratio_min = static_cast<std::uint64_t>(std::ceil(c * static_cast<double>(d) / 2.0));
    if (ratio_min > best_q) break;
    const std::uint64_t q = next_prime(std::max<std::uint64_t>({2, ratio_min, integer_root_ceil(m, d + 1)}));
    if (q < best_q) {
      best_q = q;
      best_d = d;
    }
  }
  if (best_q > (std::uint64_t{1} << 16)) {
    throw std::length_error("no prime field in range for a polynomial design of " + std::to_string(m) + " sets");
  }
  DesignFamily f;
  f.m = m;
  f.c = c;
  f.strategy = DesignStrategy::Polynomial;
  f.field_size = best_q;
  f.degree = best_d;
  f.set_size = best_q;
  f.intersection_bound = best_d;
  f.universe = best_q * best_q;
  f.sets.reserve(m);
  std::vector<std::uint64_t> coeff(best_d + 1);
  for (std::size_t i = 0; i < m; ++i) {
    std::uint64_t rest = i;
    for (auto& a : coeff) {
      a = rest % best_q;
      rest /= best_q;
    }
    std::vector<std::uint32_t> set;
    set.reserve(best_q);
    for (std::uint64_t x = 0; x < best_q; ++x) {
      std::uint64_t y = 0;
      for (std::size_t p = coeff.size(); p-- > 0;) y = (y * x + coeff[p]) % best_q;
      set.push_back(static_cast<std::uint32_t>(x * best_q + y));
    }
    f.sets.push_back(std::move(set));
  }
  return f;
}

}  // namespace

DesignFamily build_design(std::size_t m, double c, DesignStrategy strategy, std::uint64_t seed,
                          const DesignOptions& options) {
  if (m < 2) throw std::invalid_argument("a design needs m >= 2 sets");
  if (!(c > 1.0)) throw std::invalid_argument("design parameter c must exceed 1");
  if (strategy == DesignStrategy::Polynomial) return build_polynomial(m, c);
  return build_randomized(m, c, seed, options);
}

DesignCheck verify_design(const DesignFamily& family) {
  DesignCheck check;
  check.sizes_ok = family.sets.size() == family.m;
  check.universe_ok = true;
  for (const auto& s : family.sets) {
    if (s.size() != family.set_size || !std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end()) {
      check.sizes_ok = false;
    }
    if (!s.empty() && s.back() >= family.universe) check.universe_ok = false;
  }
  if (!check.universe_ok || family.sets.size() < 2) {
    check.ok = check.sizes_ok && check.universe_ok;
    return check;
  }
  check.violating_pairs = find_offending(family, &check.max_intersection).size();
  check.ok = check.sizes_ok && check.violating_pairs == 0;
  return check;
}

namespace {

void check_set_index(const DesignFamily& family, std::size_t i) {
  if (i >= family.sets.size()) {
    throw std::out_of_range("design set " + std::to_string(i) + " of " + std::to_string(family.sets.size()));
  }
}

}  // namespace

BigInt design_label_decimal(const DesignFamily& family, std::size_t i) {
  check_set_index(family, i);
  const auto& s = family.sets[i];
  if (s.empty()) return BigInt(0);
  std::string digits(s.back() + 1, '0');
  for (auto p : s) digits[digits.size() - 1 - p] = '1';
  return BigInt(digits);
}

BitVec design_label_binary(const DesignFamily& family, std::size_t i) {
  check_set_index(family, i);
  BitVec v(family.universe);
  for (auto p : family.sets[i]) v.set(p);
  return v;
}

Z3Vec design_label_ternary(const DesignFamily& family, std::size_t i) {
  check_set_index(family, i);
  Z3Vec v(family.universe);
  for (auto p : family.sets[i]) v.set(p, 1);
  return v;
}

DesignLabel design_to_label(const DesignFamily& family, std::size_t i, int base) {
  switch (base) {
    case 2:
      return design_label_binary(family, i);
    case 10:
      return design_label_decimal(family, i);
    case 3:
      return design_label_ternary(family, i);
    default:
      throw std::invalid_argument("unknown label base " + std::to_string(base));
  }
}

void write_design(std::ostream& out, const DesignFamily& family) {
  out << family.m << ' ' << family.universe << ' ' << family.set_size << ' ' << family.intersection_bound
      << '\n';
  for (const auto& s : family.sets) {
    for (std::size_t p = 0; p < s.size(); ++p) out << (p ? " " : "") << s[p];
    out << '\n';
  }
}

DesignFamily read_design(std::istream& in) {
  DesignFamily f;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError(1, "missing design header");
  {
    std::istringstream header(line);
    if (!(header >> f.m >> f.universe >> f.set_size >> f.intersection_bound)) {
      throw ParseError(1, "expected header 'm u set_size bound'");
    }
  }
  while (f.sets.size() < f.m && std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::vector<std::uint32_t> set;
    std::uint64_t x = 0;
    while (row >> x) {
      if (x >= f.universe) throw ParseError(line_no, "member " + std::to_string(x) + " outside universe");
      set.push_back(static_cast<std::uint32_t>(x));
    }
    if (!row.eof()) throw ParseError(line_no, "malformed set line");
    if (set.size() != f.set_size) throw ParseError(line_no, "set of wrong size");
    if (!std::is_sorted(set.begin(), set.end()) || std::adjacent_find(set.begin(), set.end()) != set.end()) {
      throw ParseError(line_no, "set members not strictly ascending");
    }
    f.sets.push_back(std::move(set));
  }
  if (f.sets.size() != f.m) throw ParseError(line_no, "expected " + std::to_string(f.m) + " sets");
  return f;
}

// ---------------------------------------------------------------------------
// Small-bias generator

namespace {

std::uint64_t clmul_soft(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1U) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

#if defined(__x86_64__)
__attribute__((target("pclmul,sse2"))) std::uint64_t clmul_hw(std::uint64_t a, std::uint64_t b) {
  const __m128i r = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                         _mm_cvtsi64_si128(static_cast<long long>(b)), 0);
  return static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
}
#endif

// Low 64 bits of the carry-less product.
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
#if defined(__x86_64__)
  static const bool hw = __builtin_cpu_supports("pclmul");
  if (hw) return clmul_hw(a, b);
#endif
  return clmul_soft(a, b);
}

std::size_t poly_degree(std::uint64_t p) { return p == 0 ? 0 : 63 - static_cast<std::size_t>(__builtin_clzll(p)); }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const std::size_t dm = poly_degree(m);
  while (a != 0 && poly_degree(a) >= dm) a ^= m << (poly_degree(a) - dm);
  return a;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return poly_mod(clmul(a, b), m);
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = poly_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// x^(2^e) mod m by repeated squaring.
std::uint64_t frobenius(std::size_t e, std::uint64_t m) {
  std::uint64_t v = poly_mod(2, m);
  for (std::size_t i = 0; i < e; ++i) v = poly_mulmod(v, v, m);
  return v;
}

bool rabin_irreducible(std::uint64_t f) {
  const std::size_t s = poly_degree(f);
  if (frobenius(s, f) != poly_mod(2, f)) return false;
  for (std::size_t p = 2; p <= s; ++p) {
    if (s % p != 0 || !is_prime(p)) continue;
    const std::uint64_t g = frobenius(s / p, f) ^ poly_mod(2, f);
    if (poly_gcd(f, g) != 1) return false;
  }
  return true;
}

}  // namespace

std::uint64_t irreducible_polynomial(std::size_t s) {
  if (s < 1 || s > 32) throw std::invalid_argument("field degree must be in [1, 32]");
  static const auto table = [] {
    std::array<std::uint64_t, 33> t{};
    for (std::size_t d = 1; d <= 32; ++d) {
      const std::uint64_t top = std::uint64_t{1} << d;
      for (std::uint64_t low = 1; low < top; low += 2) {
        if (d == 1 || rabin_irreducible(top | low)) {
          t[d] = top | low;
          break;
        }
      }
      if (d == 1) t[d] = 0b11;  // x + 1
    }
    return t;
  }();
  return table[s];
}

SmallBiasSpec make_small_bias_spec(std::size_t n, unsigned k, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("closeness alpha must be positive");
  SmallBiasSpec spec;
  spec.n = n;
  spec.k = k;
  spec.alpha = alpha;
  const double epsilon = alpha * std::pow(2.0, -static_cast<double>(k) / 2.0);
  const double needed = std::max(1.0, static_cast<double>(n) / epsilon);
  auto s = static_cast<std::size_t>(std::ceil(std::log2(needed) - 1e-12));
  s = std::max<std::size_t>(s, 1);
  if (s > 32) throw std::invalid_argument("small-bias field would need more than 32 bits");
  spec.field_bits = s;
  spec.seed_bits = 2 * s;
  return spec;
}

SmallBiasGenerator::SmallBiasGenerator(const SmallBiasSpec& spec)
    : spec_(spec), modulus_(irreducible_polynomial(spec.field_bits)) {
  // Barrett constant: quotient of x^(2s) by the modulus (s <= 32, so x^(2s) may need 65 bits).
  const std::size_t s = spec_.field_bits;
  std::uint64_t rem = std::uint64_t{1} << s;  // x^s mod f, before reduction
  rem = poly_mod(rem, modulus_);
  std::uint64_t quotient = 0;
  for (std::size_t i = 0; i < s; ++i) {
    // Long division of x^(2s): shift remainder left one step at a time.
    rem <<= 1;
    quotient <<= 1;
    if ((rem >> s) & 1U) {
      rem ^= modulus_;
      quotient |= 1;
    }
  }
  barrett_ = quotient | (std::uint64_t{1} << s);
}

void SmallBiasGenerator::check_seed(std::uint64_t seed) const {
  if (spec_.seed_bits < 64 && (seed >> spec_.seed_bits) != 0) {
    throw std::out_of_range("seed " + std::to_string(seed) + " outside " + std::to_string(spec_.seed_bits) +
                            "-bit seed space");
  }
}

std::uint64_t SmallBiasGenerator::multiply(std::uint64_t a, std::uint64_t b) const {
  const std::size_t s = spec_.field_bits;
  const std::uint64_t p = clmul(a, b);
  const std::uint64_t q = clmul(p >> s, barrett_) >> s;
  return (p ^ clmul(q, modulus_)) & ((std::uint64_t{1} << s) - 1);
}

std::uint64_t SmallBiasGenerator::power(std::uint64_t x, std::uint64_t e) const {
  std::uint64_t result = 1;
  while (e) {
    if (e & 1U) result = multiply(result, x);
    x = multiply(x, x);
    e >>= 1;
  }
  return result;
}

bool SmallBiasGenerator::bit(std::uint64_t seed, std::uint64_t i) const {
  check_seed(seed);
  const std::uint64_t mask = (std::uint64_t{1} << spec_.field_bits) - 1;
  const std::uint64_t x = seed & mask;
  const std::uint64_t y = (seed >> spec_.field_bits) & mask;
  return (__builtin_popcountll(power(x, i) & y) & 1) != 0;
}

BitVec SmallBiasGenerator::bits(std::uint64_t seed) const {
  check_seed(seed);
  const std::uint64_t mask = (std::uint64_t{1} << spec_.field_bits) - 1;
  const std::uint64_t x = seed & mask;
  const std::uint64_t y = (seed >> spec_.field_bits) & mask;
  BitVec out(spec_.n);
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    if (__builtin_popcountll(p & y) & 1) out.set(i);
    p = multiply(p, x);
  }
  return out;
}

BitVec small_bias_bits(const SmallBiasSpec& spec, std::uint64_t seed) {
  return SmallBiasGenerator(spec).bits(seed);
}

SeedRange enumerate_seeds(std::size_t seed_bits, std::size_t cap) {
  if (seed_bits > cap || seed_bits > 63) {
    throw std::invalid_argument("seed space of " + std::to_string(seed_bits) + " bits exceeds the cap of " +
                                std::to_string(cap));
  }
  return SeedRange(std::uint64_t{1} << seed_bits);
}

SeedRange enumerate_seeds(const SmallBiasSpec& spec, std::size_t cap) {
  return enumerate_seeds(spec.seed_bits, cap);
}

std::uint64_t scrambled_seed(std::uint64_t k, std::size_t bits) {
  if (bits == 0) return 0;
  const std::uint64_t mask = bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  const std::size_t shift = (bits + 1) / 2;
  std::uint64_t x = k & mask;
  for (int round = 0; round < 3; ++round) {
    x = (x + 0x632be59bd9b4e019ULL) & mask;
    x = (x * 0x9e3779b97f4a7c15ULL) & mask;
    x ^= x >> shift;
  }
  return x;
}

}  // namespace triweb
