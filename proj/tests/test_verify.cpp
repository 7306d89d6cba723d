#include <doctest.h>

#include <cmath>
#include <set>

#include "triweb/verify.hpp"

using namespace triweb;

namespace {

SuiteReport smoke(const std::string& name, std::size_t trials, std::map<std::string, double> params = {}) {
  SuiteOptions o;
  o.seed = 3;
  o.trials = trials;
  o.params = std::move(params);
  return run_suite(find_suite(name), o);
}

}  // namespace

TEST_CASE("registry covers ten criteria") {
  std::set<int> criteria;
  for (const auto& s : suite_registry()) criteria.insert(s.criterion);
  CHECK(criteria == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(find_suite("wht").criterion == 6);
  CHECK_THROWS_AS(find_suite("nope"), std::invalid_argument);
}

TEST_CASE("suite options") {
  SuiteOptions o;
  o.params["n"] = 12;
  CHECK(o.count("n", 3) == 12);
  CHECK(o.count("m", 3) == 3);
  CHECK(o.param("x", 0.5) == 0.5);
  CHECK(o.trials_or(7) == 7);
  o.params["n"] = -1;
  CHECK_THROWS_AS(o.count("n", 3), std::invalid_argument);
}

TEST_CASE("small suite runs pass") {
  const auto check = [](const SuiteReport& r) {
    INFO(r.name << ": " << r.summary);
    CHECK(r.passed);
    CHECK(r.failures == 0);
    CHECK(r.trials > 0);
    CHECK(r.seconds >= 0.0);
  };
  check(smoke("detect-equivalence", 20, {{"exhaustive_nodes", 4}, {"fp_instances", 50}, {"max_m", 80}}));
  check(smoke("listing", 10, {{"max_m", 400}, {"max_n", 150}}));
  check(smoke("balanced-seed", 3, {{"max_m", 600}}));
  check(smoke("baran-load", 0, {{"n", 512}, {"R", 16}, {"draws", 20}}));
  check(smoke("design", 0, {{"m", 64}}));
  check(smoke("wht", 30, {{"large", 20}}));
  check(smoke("c3xor-3xor", 30, {{"sets", 20}, {"max_n", 32}}));
  check(smoke("c3xor-listing", 20, {{"max_n", 64}, {"draws", 5}, {"false_pair_n", 64}}));
  check(smoke("clique", 20, {{"exhaustive_nodes", 4}, {"max_n", 20}, {"max_m", 40}}));
}

TEST_CASE("parallel_map keeps index order and rethrows") {
  const auto squares = parallel_map<std::size_t>(100, 4, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < 100; ++i) CHECK(squares[i] == i * i);
  CHECK(parallel_map<int>(0, 3, [](std::size_t) { return 1; }).empty());
  CHECK_THROWS_AS(parallel_map<int>(10, 3,
                                    [](std::size_t i) {
                                      if (i == 7) throw std::runtime_error("boom");
                                      return 0;
                                    }),
                  std::runtime_error);
}

TEST_CASE("log-log slope") {
  std::vector<double> x, y;
  for (double v : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    x.push_back(v);
    y.push_back(3.0 * v * v);
  }
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0));
  CHECK(median_seconds([] {}, 3) >= 0.0);
}
