#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace triweb {

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Trials per suite; 0 keeps the suite's default.
  std::size_t trials = 0;
  std::size_t jobs = 1;
  /// Suite-specific numeric knobs such as n, R or draws.
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
  std::size_t count(const std::string& key, std::size_t fallback) const;
  std::size_t trials_or(std::size_t fallback) const { return trials == 0 ? fallback : trials; }
};

struct SuiteReport {
  std::string name;
  bool passed = false;
  /// Failures only warn (timing-based checks).
  bool indicative = false;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double seconds = 0.0;
  std::string summary;
  /// Tab-separated "key<TAB>value" rows.
  std::vector<std::string> details;

  void detail(const std::string& key, const std::string& value);
  void detail(const std::string& key, double value);
};

using SuiteFn = std::function<SuiteReport(const SuiteOptions&)>;

struct SuiteInfo {
  std::string name;
  /// Acceptance criterion the suite checks.
  int criterion = 0;
  std::string description;
  SuiteFn run;
};

const std::vector<SuiteInfo>& suite_registry();
/// Throws std::invalid_argument for unknown names.
const SuiteInfo& find_suite(std::string_view name);
/// Runs the suite and fills in name and seconds.
SuiteReport run_suite(const SuiteInfo& suite, const SuiteOptions& options);

SuiteReport verify_detect_equivalence(const SuiteOptions& options);
SuiteReport verify_listing(const SuiteOptions& options);
SuiteReport verify_balanced_seed(const SuiteOptions& options);
SuiteReport verify_baran_load(const SuiteOptions& options);
SuiteReport verify_design_suite(const SuiteOptions& options);
SuiteReport verify_wht(const SuiteOptions& options);
SuiteReport verify_c3xor_3xor(const SuiteOptions& options);
SuiteReport verify_c3xor_listing(const SuiteOptions& options);
SuiteReport verify_clique(const SuiteOptions& options);
SuiteReport verify_scaling(const SuiteOptions& options);

// ---------------------------------------------------------------------------
// Helpers

/// fn(i) for i in [0, count) on up to `jobs` threads; results in index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, std::size_t jobs, F fn) {
  std::vector<T> out(count);
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += jobs) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Median wall-clock seconds of reps calls.
double median_seconds(const std::function<void()>& fn, std::size_t reps);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace triweb
