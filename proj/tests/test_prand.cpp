#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "triweb/generate.hpp"
#include "triweb/prand.hpp"

using namespace triweb;

TEST_CASE("linear hash examples") {
  const auto keys = sample_hash(8, 3, 1);
  CHECK(keys.output_width() == 3);
  CHECK(keys.keys().size() == 3);
  for (const auto& k : keys.keys()) CHECK(k.width() == 8);
  CHECK(keys.apply(BitVec(8)).is_zero());

  const XorHashKeys one({BitVec::from_binary("11")}, 2);
  CHECK(one.apply(BitVec::from_binary("01")).to_uint() == 1);
  CHECK(hash_apply(one, BitVec::from_binary("11")).to_uint() == 0);
  CHECK_THROWS(one.apply(BitVec::from_binary("011")));

  const auto constant = sample_hash(8, 0, 1);
  CHECK(constant.output_width() == 0);
  CHECK(constant.apply_uint(BitVec::from_uint(17, 8)) == constant.apply_uint(BitVec::from_uint(200, 8)));
}

TEST_CASE("linear hash is linear") {
  auto rng = make_rng(21);
  for (int i = 0; i < 10000; ++i) {
    const auto keys = sample_hash(40, 7, static_cast<std::uint64_t>(i));
    const auto x = random_bitvec(rng, 40), y = random_bitvec(rng, 40);
    CHECK((keys.apply(x) ^ keys.apply(y)) == keys.apply(x ^ y));
  }
}

TEST_CASE("collision rate of a fixed pair is about 2^-r") {
  const auto x = BitVec::from_uint(0x155, 10), y = BitVec::from_uint(0x2a3, 10);
  const int draws = 100000;
  int collisions = 0;
  for (int s = 0; s < draws; ++s) {
    const auto keys = sample_hash(10, 4, static_cast<std::uint64_t>(s));
    collisions += keys.apply_uint(x) == keys.apply_uint(y);
  }
  const double p = 1.0 / 16, sigma = std::sqrt(p * (1 - p) / draws);
  CHECK(static_cast<double>(collisions) / draws <= p + 5 * sigma);
}

TEST_CASE("bucket load statistics") {
  // Identity-like hash on 4 distinct 2-bit values: every bucket holds one.
  const XorHashKeys id({BitVec::from_binary("01"), BitVec::from_binary("10")}, 2);
  std::vector<BitVec> set;
  for (std::uint64_t v = 0; v < 4; ++v) set.push_back(BitVec::from_uint(v, 2));
  const auto st = bucket_load_stats(id, set, 1.0);
  CHECK(st.bucket_loads == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(st.overloaded_count == 0);
  CHECK(st.threshold == doctest::Approx(3.0));

  // A constant hash puts all n in one bucket, still under 2n/R + k.
  const auto constant = sample_hash(2, 0, 3);
  const auto all = bucket_load_stats(constant, set, 1.0);
  CHECK(all.bucket_loads == std::vector<std::size_t>{4});
  CHECK(all.overloaded_count == 0);
  REQUIRE(all.element_histogram.size() > 4);
  CHECK(all.element_histogram[4] == 4);

  // One output bit that ignores the high bit: loads 2 and 2, threshold 2n/R + k = 4.5.
  const XorHashKeys low({BitVec::from_binary("01")}, 2);
  const auto half = bucket_load_stats(low, set, 0.5);
  CHECK(half.bucket_loads == std::vector<std::size_t>{2, 2});
  CHECK(half.threshold == doctest::Approx(4.5));
}

TEST_CASE("design examples") {
  const auto two = build_design(2, 11, DesignStrategy::RandomizedVerified, 1);
  CHECK(verify_design(two).ok);

  const auto rnd = build_design(1024, 11, DesignStrategy::RandomizedVerified, 2);
  CHECK(rnd.set_size == 121 * 10);
  CHECK(rnd.intersection_bound == 22 * 10);
  CHECK(rnd.universe == 50 * 1331 * 10);
  const auto check = verify_design(rnd);
  CHECK(check.ok);
  CHECK(check.max_intersection <= 220);

  const auto poly = build_design(256, 11, DesignStrategy::Polynomial, 0);
  CHECK(verify_design(poly).ok);
  CHECK(poly.universe == poly.field_size * poly.field_size);
  CHECK(poly.intersection_ratio() <= 2.0 / 11);
  CHECK(std::pow(static_cast<double>(poly.field_size), static_cast<double>(poly.degree + 1)) >= 256);

  CHECK_THROWS(build_design(1, 11, DesignStrategy::Polynomial, 0));
  CHECK_THROWS(build_design(10, 1.0, DesignStrategy::Polynomial, 0));
}

TEST_CASE("design verification catches violations") {
  DesignFamily f;
  f.m = 2;
  f.universe = 4;
  f.set_size = 2;
  f.intersection_bound = 1;
  f.sets = {{0, 1}, {0, 1}};
  const auto bad = verify_design(f);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violating_pairs == 1);
  f.sets = {{0, 1}, {1, 5}};
  CHECK_FALSE(verify_design(f).universe_ok);
}

TEST_CASE("design labels in three bases") {
  DesignFamily f;
  f.m = 2;
  f.universe = 3;
  f.set_size = 2;
  f.sets = {{0, 2}, {1, 2}};
  CHECK(design_label_decimal(f, 0) == BigInt(101));
  CHECK(design_label_binary(f, 0).to_binary() == "101");
  DesignFamily g = f;
  g.set_size = 1;
  g.sets = {{1}, {2}};
  CHECK(design_label_ternary(g, 0).to_digits() == "010");
  CHECK(std::get<BigInt>(design_to_label(f, 1, 10)) == BigInt(110));
  CHECK_THROWS_AS(design_to_label(f, 0, 7), std::invalid_argument);
  CHECK_THROWS(design_label_binary(f, 2));
}

TEST_CASE("design serialization round trips") {
  const auto f = build_design(40, 11, DesignStrategy::Polynomial, 0);
  std::stringstream ss;
  write_design(ss, f);
  const auto back = read_design(ss);
  CHECK(back.sets == f.sets);
  CHECK(back.universe == f.universe);
  CHECK(back.set_size == f.set_size);
  CHECK(back.intersection_bound == f.intersection_bound);
}

TEST_CASE("irreducible polynomials have the right degree") {
  CHECK(irreducible_polynomial(2) == 0b111);
  CHECK(irreducible_polynomial(8) == 0x11b);
  for (std::size_t s = 1; s <= 32; ++s) CHECK((irreducible_polynomial(s) >> s) == 1);
}

TEST_CASE("small-bias output shape and the x = 0 seed") {
  for (std::size_t n : {1, 5, 64, 100, 1000}) {
    const auto spec = make_small_bias_spec(n, 4, 0.25);
    CHECK(small_bias_bits(spec, 3).width() == n);
  }
  const auto spec = make_small_bias_spec(40, 4, 0.25);
  const std::uint64_t y = 0b1011;
  const auto b = small_bias_bits(spec, y << spec.field_bits);
  CHECK(b.get(0) == true);
  for (std::size_t i = 1; i < 40; ++i) CHECK_FALSE(b.get(i));
  CHECK_THROWS(small_bias_bits(spec, std::uint64_t{1} << spec.seed_bits));
}

TEST_CASE("any 4 of 16 bits are alpha-close to uniform over all seeds") {
  const auto spec = make_small_bias_spec(16, 4, 0.25);
  const SmallBiasGenerator gen(spec);
  std::vector<std::uint16_t> outputs;
  for (auto seed : enumerate_seeds(spec)) outputs.push_back(static_cast<std::uint16_t>(gen.bits(seed).to_uint()));
  const double total = static_cast<double>(outputs.size());
  double worst = 0;
  for (int a = 0; a < 16; ++a)
    for (int b = a + 1; b < 16; ++b)
      for (int c = b + 1; c < 16; ++c)
        for (int d = c + 1; d < 16; ++d) {
          std::array<std::size_t, 16> counts{};
          for (auto o : outputs)
            ++counts[((o >> a) & 1) | (((o >> b) & 1) << 1) | (((o >> c) & 1) << 2) | (((o >> d) & 1) << 3)];
          double dist = 0;
          for (auto c2 : counts) dist += std::abs(static_cast<double>(c2) / total - 1.0 / 16);
          worst = std::max(worst, dist / 2);
        }
  CHECK(worst <= 0.25);
}

TEST_CASE("seed enumeration") {
  std::vector<std::uint64_t> seeds;
  for (auto s : enumerate_seeds(3)) seeds.push_back(s);
  CHECK(seeds == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(enumerate_seeds(0).size() == 1);
  std::vector<std::uint64_t> again;
  for (auto s : enumerate_seeds(3)) again.push_back(s);
  CHECK(again == seeds);
  CHECK_THROWS(enumerate_seeds(33));
}

TEST_CASE("scrambled seeds are a bijection") {
  for (std::size_t bits : {1, 4, 10}) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << bits); ++k) {
      const auto s = scrambled_seed(k, bits);
      CHECK(s < (std::uint64_t{1} << bits));
      seen.insert(s);
    }
    CHECK(seen.size() == (std::size_t{1} << bits));
  }
}
