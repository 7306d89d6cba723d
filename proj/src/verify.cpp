#include "triweb/verify.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "triweb/clique_reduce.hpp"
#include "triweb/detect_reduce.hpp"
#include "triweb/generate.hpp"
#include "triweb/list_reduce.hpp"
#include "triweb/prand.hpp"
#include "triweb/rng.hpp"
#include "triweb/solvers.hpp"
#include "triweb/xor_reduce.hpp"

namespace triweb {

double SuiteOptions::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::size_t SuiteOptions::count(const std::string& key, std::size_t fallback) const {
  const double v = param(key, static_cast<double>(fallback));
  if (v < 0) throw std::invalid_argument("parameter " + key + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::size_t choose2(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Graph on labels 0..nodes-1 whose edges are the set bits of mask, pairs in
/// lexicographic order.
Graph graph_from_mask(std::size_t nodes, std::uint64_t mask) {
  std::vector<std::pair<Label, Label>> edges;
  std::size_t bit = 0;
  for (std::size_t u = 0; u < nodes; ++u)
    for (std::size_t v = u + 1; v < nodes; ++v, ++bit)
      if ((mask >> bit) & 1U) edges.emplace_back(static_cast<Label>(u), static_cast<Label>(v));
  return normalize_graph(edges);
}

/// Random triangle-free graph: bipartite when `bipartite`, else edges are
/// added greedily unless they close a triangle.
Graph triangle_free_graph(Rng& rng, std::size_t n, std::size_t m, bool bipartite) {
  std::vector<std::set<std::size_t>> adj(n);
  std::vector<std::pair<Label, Label>> edges;
  const std::size_t left = n / 2;
  const std::size_t cap = bipartite ? left * (n - left) : choose2(n);
  m = std::min(m, cap);
  for (std::size_t attempts = 0; edges.size() < m && attempts < 50 * m + 100; ++attempts) {
    std::size_t u = uniform_int<std::size_t>(rng, 0, n - 1), v = uniform_int<std::size_t>(rng, 0, n - 1);
    if (bipartite) {
      u = uniform_int<std::size_t>(rng, 0, left - 1);
      v = uniform_int<std::size_t>(rng, left, n - 1);
    }
    if (u == v || adj[u].count(v)) continue;
    if (!bipartite) {
      const auto& small = adj[u].size() < adj[v].size() ? adj[u] : adj[v];
      const auto& large = adj[u].size() < adj[v].size() ? adj[v] : adj[u];
      if (std::any_of(small.begin(), small.end(), [&](std::size_t w) { return large.count(w) > 0; })) continue;
    }
    adj[u].insert(v);
    adj[v].insert(u);
    edges.emplace_back(static_cast<Label>(u), static_cast<Label>(v));
  }
  return normalize_graph(edges);
}

std::vector<BitVec> random_distinct_vectors(Rng& rng, std::size_t n, std::size_t width) {
  std::unordered_set<BitVec, BitVecHash> seen;
  std::vector<BitVec> out;
  while (out.size() < n) {
    auto v = random_bitvec(rng, width);
    if (seen.insert(v).second) out.push_back(std::move(v));
  }
  return out;
}

/// Ordered triples of pairwise distinct positions with x ⊕ y ⊕ z = 0, by brute force.
std::int64_t count_triples_naive(std::span<const BitVec> v) {
  std::int64_t count = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      for (std::size_t k = 0; k < v.size(); ++k)
        if (i != j && j != k && i != k && (v[i] ^ v[j] ^ v[k]).is_zero()) ++count;
  return count;
}

void finish(SuiteReport& r, std::size_t trials, std::size_t failures) {
  r.trials = trials;
  r.failures = failures;
  r.passed = failures == 0;
}

// ---------------------------------------------------------------------------

struct DetectTally {
  std::size_t graphs = 0;
  std::size_t disagreements = 0;
  std::size_t with_triangle = 0;
};

DetectTally& operator+=(DetectTally& a, const DetectTally& b) {
  a.graphs += b.graphs;
  a.disagreements += b.disagreements;
  a.with_triangle += b.with_triangle;
  return a;
}

DetectTally check_detection(const Graph& g, std::uint64_t seed, bool decision) {
  DetectTally t;
  t.graphs = 1;
  const bool oracle = detect_triangle(g).has_value();
  t.with_triangle = oracle;
  DetectOptions det;
  DetectOptions rnd;
  rnd.mode = LabelMode::Randomized;
  rnd.seed = seed;
  const auto xor_solver = default_xor3_solver();
  const auto sum_solver = default_sum3_solver();
  for (const auto& r : {detect_via_3xor(g, xor_solver, det), detect_via_3sum(g, sum_solver, det),
                        detect_via_3xor(g, xor_solver, rnd), detect_via_3sum(g, sum_solver, rnd)}) {
    const bool ok = r.has_triangle == oracle && (!oracle || (r.triangle && is_triangle(g, *r.triangle)));
    if (!ok) ++t.disagreements;
  }
  if (decision && oracle) {
    // One-sided error: a graph with a triangle must always get a yes.
    DetectOptions once = rnd;
    once.confidence_rounds = 1;
    const bool a = detect_via_3xor_decision(
                       g, [](std::span<const BitVec> v) { return solve_3xor_quadratic(v).has_value(); }, once)
                       .has_triangle;
    const bool b = detect_via_3sum_decision(
                       g, [](std::span<const BigInt> v) { return solve_3sum_hashed(v).has_value(); }, once)
                       .has_triangle;
    t.disagreements += !a + !b;
  }
  return t;
}

}  // namespace

void SuiteReport::detail(const std::string& key, const std::string& value) { details.push_back(key + "\t" + value); }
void SuiteReport::detail(const std::string& key, double value) { detail(key, fmt(value, 6)); }

// ---------------------------------------------------------------------------

SuiteReport verify_detect_equivalence(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  SuiteReport r;
  const std::size_t graphs = o.trials_or(500);
  const std::size_t max_n = o.count("max_n", 100), max_m = o.count("max_m", 600);
  const std::size_t exhaustive = o.count("exhaustive_nodes", 6);
  const std::size_t fp_instances = o.count("fp_instances", 1000);
  const double time_limit = o.param("time_limit", 120.0);
  if (exhaustive > 8) throw std::invalid_argument("exhaustive_nodes must be at most 8");

  const auto random = parallel_map<DetectTally>(graphs, o.jobs, [&](std::size_t i) {
    auto rng = make_rng(o.seed, i);
    const std::size_t n = uniform_int<std::size_t>(rng, 3, std::max<std::size_t>(3, max_n));
    const std::size_t m = uniform_int<std::size_t>(rng, 0, std::min(max_m, choose2(n)));
    const std::size_t planted = uniform_int<std::size_t>(rng, 0, std::min<std::size_t>(5, m / 3));
    return check_detection(gen_graph(n, m, planted, derive_seed(o.seed, i)), derive_seed(o.seed, i + graphs), true);
  });
  DetectTally rand_total;
  for (const auto& t : random) rand_total += t;

  DetectTally exh_total;
  if (exhaustive >= 3) {
    const std::uint64_t masks = std::uint64_t{1} << choose2(exhaustive);
    const auto exh = parallel_map<DetectTally>(masks, o.jobs, [&](std::size_t mask) {
      return check_detection(graph_from_mask(exhaustive, mask), derive_seed(o.seed, mask), false);
    });
    for (const auto& t : exh) exh_total += t;
  }

  struct Fp {
    std::size_t xor_yes = 0, sum_yes = 0, not_free = 0;
  };
  const auto fp = parallel_map<Fp>(fp_instances, o.jobs, [&](std::size_t i) {
    auto rng = make_rng(o.seed ^ 0xf9, i);
    const std::size_t n = uniform_int<std::size_t>(rng, 6, std::max<std::size_t>(6, max_n));
    const std::size_t m = uniform_int<std::size_t>(rng, 3, std::max<std::size_t>(3, std::min(max_m, 2 * n)));
    const Graph g = triangle_free_graph(rng, n, m, i % 2 == 0);
    Fp f;
    f.not_free = detect_triangle(g).has_value();
    DetectOptions once;
    once.mode = LabelMode::Randomized;
    once.confidence_rounds = 1;
    once.seed = derive_seed(o.seed, i + 7919);
    f.xor_yes = detect_via_3xor_decision(
                    g, [](std::span<const BitVec> v) { return solve_3xor_quadratic(v).has_value(); }, once)
                    .has_triangle;
    f.sum_yes = detect_via_3sum_decision(
                    g, [](std::span<const BigInt> v) { return solve_3sum_hashed(v).has_value(); }, once)
                    .has_triangle;
    return f;
  });
  Fp fp_total;
  for (const auto& f : fp) {
    fp_total.xor_yes += f.xor_yes;
    fp_total.sum_yes += f.sum_yes;
    fp_total.not_free += f.not_free;
  }
  const double nfp = std::max<double>(1.0, static_cast<double>(fp_instances));
  const double bound = 0.5 + 3.0 * std::sqrt(0.25 / nfp);
  const double xor_rate = static_cast<double>(fp_total.xor_yes) / nfp;
  const double sum_rate = static_cast<double>(fp_total.sum_yes) / nfp;
  const double seconds = since(t0);

  std::size_t failures = rand_total.disagreements + exh_total.disagreements + fp_total.not_free;
  if (fp_instances > 0 && (xor_rate > bound || sum_rate > bound)) ++failures;
  if (seconds > time_limit) ++failures;
  finish(r, rand_total.graphs + exh_total.graphs + fp_instances, failures);
  r.detail("random_graphs", static_cast<double>(rand_total.graphs));
  r.detail("random_with_triangle", static_cast<double>(rand_total.with_triangle));
  r.detail("random_disagreements", static_cast<double>(rand_total.disagreements));
  r.detail("exhaustive_graphs", static_cast<double>(exh_total.graphs));
  r.detail("exhaustive_disagreements", static_cast<double>(exh_total.disagreements));
  r.detail("fp_instances", static_cast<double>(fp_instances));
  r.detail("fp_rate_3xor", xor_rate);
  r.detail("fp_rate_3sum", sum_rate);
  r.detail("fp_bound", bound);
  r.detail("time_limit_s", time_limit);
  r.summary = std::to_string(rand_total.graphs + exh_total.graphs - rand_total.disagreements - exh_total.disagreements) +
              "/" + std::to_string(rand_total.graphs + exh_total.graphs) + " graphs agree in all modes; " +
              "single-round false-positive rate 3xor " + fmt(xor_rate) + ", 3sum " + fmt(sum_rate) + " (bound " +
              fmt(bound) + "); " + fmt(seconds, 3) + " s";
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct ListTally {
  std::size_t runs = 0;
  std::size_t wrong = 0;
  std::size_t live_violations = 0;
  std::size_t ratio_violations = 0;
  std::size_t edge_bound_flags = 0;
  std::size_t fallbacks = 0;
  std::size_t partitions = 0;
  std::size_t seeds = 0;
  std::size_t without_partition = 0;
  double max_ratio = 0.0;
};

ListTally& operator+=(ListTally& a, const ListTally& b) {
  a.runs += b.runs;
  a.wrong += b.wrong;
  a.live_violations += b.live_violations;
  a.ratio_violations += b.ratio_violations;
  a.edge_bound_flags += b.edge_bound_flags;
  a.fallbacks += b.fallbacks;
  a.partitions += b.partitions;
  a.seeds += b.seeds;
  a.without_partition += b.without_partition;
  a.max_ratio = std::max(a.max_ratio, b.max_ratio);
  return a;
}

ListTally check_listing(const Graph& g, const std::set<Triangle>& oracle, std::size_t t,
                        const ListingParams& params) {
  ListTally tally;
  tally.runs = 1;
  const auto res = list_triangles(g, t, baseline_detector(), params);
  const std::set<Triangle> got(res.triangles.begin(), res.triangles.end());
  bool ok = got.size() == res.triangles.size() && res.triangles.size() == std::min(t, oracle.size());
  for (const auto& tri : got) ok = ok && oracle.count(tri) > 0;
  tally.wrong = !ok;
  tally.live_violations = res.stats.live_bound_violated;
  tally.edge_bound_flags = res.stats.edge_bound_violated;
  tally.ratio_violations = res.stats.max_partition_ratio > 0.25 + params.gamma + 1e-12;
  tally.fallbacks = res.stats.random_fallbacks;
  tally.partitions = res.stats.partitions;
  tally.seeds = res.stats.seeds_tried;
  tally.without_partition = res.stats.partitions == 0;
  tally.max_ratio = res.stats.max_partition_ratio;
  return tally;
}

}  // namespace

SuiteReport verify_listing(const SuiteOptions& o) {
  const auto t0 = Clock::now();
  SuiteReport r;
  const std::size_t graphs = o.trials_or(200);
  const std::size_t max_m = o.count("max_m", 3000), max_n = o.count("max_n", 600);
  const double time_limit = o.param("time_limit", 300.0);
  ListingParams practical;
  practical.delta = o.param("delta", 0.005);
  const bool run_defaults = o.param("defaults", 1.0) != 0.0;

  struct Pair {
    ListTally practical, defaults;
  };
  const auto per_graph = parallel_map<Pair>(graphs, o.jobs, [&](std::size_t i) {
    auto rng = make_rng(o.seed, i);
    const std::size_t n = uniform_int<std::size_t>(rng, 30, std::max<std::size_t>(30, max_n));
    const std::size_t hi = std::min(max_m, choose2(n));
    const std::size_t m = uniform_int<std::size_t>(rng, std::min(hi, std::max<std::size_t>(3, n / 2)), hi);
    const std::size_t planted = uniform_int<std::size_t>(rng, 0, std::min<std::size_t>(30, m / 3));
    const Graph g = gen_graph(n, m, planted, derive_seed(o.seed, i));
    const auto all = list_all_triangles(g);
    const std::set<Triangle> oracle(all.begin(), all.end());
    const std::size_t z = oracle.size();
    std::set<std::size_t> ts{1, (z + 1) / 2, z, g.edge_count()};
    Pair p;
    for (auto t : ts) {
      ListingParams params = practical;
      params.fallback_seed = derive_seed(o.seed, i * 4 + t);
      p.practical += check_listing(g, oracle, t, params);
      if (run_defaults) {
        ListingParams d;
        d.fallback_seed = params.fallback_seed;
        p.defaults += check_listing(g, oracle, t, d);
      }
    }
    return p;
  });
  ListTally prac, defs;
  for (const auto& p : per_graph) {
    prac += p.practical;
    defs += p.defaults;
  }
  const double seconds = since(t0);
  std::size_t failures = prac.wrong + prac.live_violations + prac.ratio_violations + defs.wrong +
                         defs.live_violations + defs.ratio_violations;
  if (seconds > time_limit) ++failures;
  finish(r, prac.runs + defs.runs, failures);
  r.detail("graphs", static_cast<double>(graphs));
  r.detail("practical_delta", practical.delta);
  r.detail("practical_runs", static_cast<double>(prac.runs));
  r.detail("practical_wrong", static_cast<double>(prac.wrong));
  r.detail("practical_partitions", static_cast<double>(prac.partitions));
  r.detail("practical_seeds_tried", static_cast<double>(prac.seeds));
  r.detail("practical_random_fallbacks", static_cast<double>(prac.fallbacks));
  r.detail("practical_max_partition_ratio", prac.max_ratio);
  r.detail("practical_live_bound_violations", static_cast<double>(prac.live_violations));
  r.detail("practical_edge_bound_flags", static_cast<double>(prac.edge_bound_flags));
  r.detail("default_runs", static_cast<double>(defs.runs));
  r.detail("default_wrong", static_cast<double>(defs.wrong));
  r.detail("default_runs_without_partition", static_cast<double>(defs.without_partition));
  r.detail("time_limit_s", time_limit);
  r.summary = std::to_string(prac.runs - prac.wrong) + "/" + std::to_string(prac.runs) + " runs exact at delta " +
              fmt(practical.delta) + " (" + std::to_string(prac.partitions) + " partitions, max ratio " +
              fmt(prac.max_ratio) + ", " + std::to_string(prac.fallbacks) + " random fallbacks); " +
              std::to_string(defs.runs - defs.wrong) + "/" + std::to_string(defs.runs) +
              " exact at default delta (" + std::to_string(defs.without_partition) +
              " needed no partition); " + fmt(seconds, 3) + " s";
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport verify_balanced_seed(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t instances = o.trials_or(50);
  const std::size_t max_m = o.count("max_m", 12000);
  const double practical_delta = o.param("delta", 0.01);
  const bool full = o.param("full_recursion", 1.0) != 0.0;

  struct Inst {
    std::size_t literal_edges = 0, practical_edges = 0;
    bool literal_ok = false, practical_ok = false;
    std::size_t literal_seeds = 0, practical_seeds = 0;
    std::size_t partitions = 0, fallbacks = 0;
  };
  const auto res = parallel_map<Inst>(instances, o.jobs, [&](std::size_t i) {
    auto rng = make_rng(o.seed, i);
    const std::size_t m = uniform_int<std::size_t>(rng, std::min<std::size_t>(1000, max_m), max_m);
    const std::size_t n = uniform_int<std::size_t>(rng, std::max<std::size_t>(300, m / 8), std::max<std::size_t>(300, m / 2));
    const std::size_t planted = uniform_int<std::size_t>(rng, 0, 20);
    const Graph g = gen_graph(n, m, planted, derive_seed(o.seed, i));
    Inst out;
    for (int pass = 0; pass < 2; ++pass) {
      ListingParams params;
      params.fallback_seed = derive_seed(o.seed, i + 1000003);
      if (pass == 1) params.delta = practical_delta;
      const auto s1 = stage1_high_degree(g, params.delta, 1);
      const auto h = stage2_tripartite(s1.residual);
      const auto root = root_subproblem(h);
      const auto part = balanced_partition(h, root, params);
      if (pass == 0) {
        out.literal_edges = root.edges.size();
        out.literal_ok = !part.random_fallback;
        out.literal_seeds = part.seeds_tried;
        continue;
      }
      out.practical_edges = root.edges.size();
      out.practical_ok = !part.random_fallback;
      out.practical_seeds = part.seeds_tried;
      if (full && root.edges.size() >= 3) {
        const std::size_t z = list_all_triangles(s1.residual).size();
        ListingStats stats;
        stage3_recurse(h, std::max<std::size_t>(1, 6 * z), baseline_detector(), params, &stats);
        out.partitions = stats.partitions;
        out.fallbacks = stats.random_fallbacks;
      }
    }
    return out;
  });
  std::size_t literal_ok = 0, practical_ok = 0, literal_nonempty = 0, partitions = 0, fallbacks = 0;
  std::size_t max_seeds = 0, max_edges = 0;
  double seed_sum = 0;
  for (const auto& x : res) {
    literal_ok += x.literal_ok;
    practical_ok += x.practical_ok;
    literal_nonempty += x.literal_edges > 0;
    partitions += x.partitions;
    fallbacks += x.fallbacks;
    max_seeds = std::max(max_seeds, x.practical_seeds);
    max_edges = std::max(max_edges, x.practical_edges);
    seed_sum += static_cast<double>(x.practical_seeds);
  }
  finish(r, 2 * instances, (instances - literal_ok) + (instances - practical_ok) + fallbacks);
  r.detail("instances", static_cast<double>(instances));
  r.detail("literal_delta", ListingParams{}.delta);
  r.detail("literal_seed_found", static_cast<double>(literal_ok));
  r.detail("literal_nonempty_roots", static_cast<double>(literal_nonempty));
  r.detail("practical_delta", practical_delta);
  r.detail("practical_seed_found", static_cast<double>(practical_ok));
  r.detail("practical_max_root_edges", static_cast<double>(max_edges));
  r.detail("practical_mean_seeds_tried", seed_sum / std::max<double>(1.0, static_cast<double>(instances)));
  r.detail("practical_max_seeds_tried", static_cast<double>(max_seeds));
  r.detail("recursion_partitions", static_cast<double>(partitions));
  r.detail("recursion_random_fallbacks", static_cast<double>(fallbacks));
  r.summary = "seed found at default delta " + std::to_string(literal_ok) + "/" + std::to_string(instances) + " (" +
              std::to_string(literal_nonempty) + " nonempty after stage 1), at delta " + fmt(practical_delta) + " " +
              std::to_string(practical_ok) + "/" + std::to_string(instances) + " (root up to " +
              std::to_string(max_edges) + " edges, max " + std::to_string(max_seeds) + " seeds); " +
              std::to_string(fallbacks) + " fallbacks in " + std::to_string(partitions) + " recursive partitions";
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport verify_baran_load(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t n = o.count("n", 4096), buckets = o.count("R", 64);
  const std::size_t draws = o.count("draws", o.trials_or(200));
  const std::size_t width = o.count("width", std::max<std::size_t>(3 * ceil_log2(n), ceil_log2(n) + 1));
  if (!is_power_of_two(buckets)) throw std::invalid_argument("R must be a power of two");
  if (n == 0 || n > (std::size_t{1} << std::min<std::size_t>(width, 63))) {
    throw std::invalid_argument("n must be positive and fit in the width");
  }
  const std::size_t r_bits = ceil_log2(buckets);
  const double k = o.param("k", static_cast<double>(n) / static_cast<double>(buckets));
  const double bound = 1.5 * static_cast<double>(n) / k;

  auto rng = make_rng(o.seed, 0xba);
  const std::vector<std::pair<std::string, std::vector<BitVec>>> sets = {
      {"random", random_distinct_vectors(rng, n, width)},
      {"consecutive", [&] {
         std::vector<BitVec> v;
         for (std::size_t i = 0; i < n; ++i) v.push_back(BitVec::from_uint(i, width));
         return v;
       }()}};
  std::size_t failures = 0;
  std::string summary;
  for (const auto& [name, set] : sets) {
    const auto counts = parallel_map<std::pair<std::size_t, bool>>(draws, o.jobs, [&](std::size_t d) {
      const auto keys = sample_hash(width, r_bits, derive_seed(o.seed, d));
      const auto stats = bucket_load_stats(keys, set, k);
      std::size_t total = 0;
      for (std::size_t s = 0; s < stats.element_histogram.size(); ++s) total += stats.element_histogram[s];
      return std::make_pair(stats.overloaded_count, total == set.size());
    });
    double sum = 0;
    std::size_t bad_hist = 0, worst = 0;
    for (const auto& [c, ok] : counts) {
      sum += static_cast<double>(c);
      worst = std::max(worst, c);
      bad_hist += !ok;
    }
    const double mean = sum / std::max<double>(1.0, static_cast<double>(draws));
    failures += bad_hist + (mean > bound);
    r.detail(name + "_mean_overloaded", mean);
    r.detail(name + "_max_overloaded", static_cast<double>(worst));
    r.detail(name + "_histogram_mismatches", static_cast<double>(bad_hist));
    summary += name + " mean overloaded " + fmt(mean) + ", ";
  }
  finish(r, 2 * draws, failures);
  r.detail("bound", bound);
  r.detail("threshold", 2.0 * static_cast<double>(n) / static_cast<double>(buckets) + k);
  r.summary = summary + "bound " + fmt(bound) + " over " + std::to_string(draws) + " draws (n=" + std::to_string(n) +
              ", R=" + std::to_string(buckets) + ")";
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport verify_design_suite(const SuiteOptions& o) {
  SuiteReport r;
  std::vector<std::size_t> ms{256, 1024, 4096};
  std::vector<double> cs{11.0, 23.0};
  if (o.params.count("m")) ms = {o.count("m", 0)};
  if (o.params.count("c")) cs = {o.param("c", 11.0)};
  std::size_t checks = 0, failures = 0;
  for (auto m : ms) {
    for (auto c : cs) {
      for (auto strategy : {DesignStrategy::Polynomial, DesignStrategy::RandomizedVerified}) {
        const auto f = build_design(m, c, strategy, derive_seed(o.seed, m));
        const auto check = verify_design(f);
        bool params_ok = f.m == m && f.sets.size() == m;
        const double lg = static_cast<double>(ceil_log2(m));
        if (strategy == DesignStrategy::Polynomial) {
          const double q = static_cast<double>(f.field_size);
          params_ok = params_ok && f.set_size == f.field_size && f.universe == f.field_size * f.field_size &&
                      f.intersection_bound == f.degree && 2.0 * q >= c * static_cast<double>(f.degree) &&
                      std::pow(q, static_cast<double>(f.degree + 1)) >= static_cast<double>(m);
        } else {
          params_ok = params_ok && f.set_size == static_cast<std::size_t>(std::llround(c * c * lg)) &&
                      f.universe == static_cast<std::size_t>(std::ceil(50.0 * c * c * c * lg)) &&
                      f.intersection_bound == static_cast<std::size_t>(std::floor(2.0 * c * lg));
        }
        const bool ok = check.ok && params_ok && check.max_intersection <= f.intersection_bound;
        ++checks;
        failures += !ok;
        const std::string tag = std::string(strategy == DesignStrategy::Polynomial ? "poly" : "rand") + "_m" +
                                std::to_string(m) + "_c" + fmt(c);
        r.detail(tag, std::string(ok ? "ok" : "FAIL") + " universe=" + std::to_string(f.universe) +
                          " size=" + std::to_string(f.set_size) + " bound=" + std::to_string(f.intersection_bound) +
                          " max_intersection=" + std::to_string(check.max_intersection));
      }
    }
  }
  finish(r, checks, failures);
  r.summary = std::to_string(checks - failures) + "/" + std::to_string(checks) +
              " designs verified with exact parameters";
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport verify_wht(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t small = o.trials_or(500), large = o.count("large", 500);
  struct Out {
    bool agree = true, count_ok = true, yes = false;
  };
  const auto run = [&](std::size_t i, bool is_small) {
    auto rng = make_rng(o.seed ^ (is_small ? 0x51 : 0x1a), i);
    const std::size_t width = is_small ? uniform_int<std::size_t>(rng, 3, 8) : 12;
    const std::size_t n =
        is_small ? uniform_int<std::size_t>(rng, 3, std::min<std::size_t>(32, std::size_t{1} << width)) : 64;
    const BitVectorSet s(random_distinct_vectors(rng, n, width), width);
    const auto wht = solve_3xor_wht(s);
    const auto quad = solve_3xor_quadratic(s);
    Out out;
    out.yes = quad.has_value();
    out.agree = wht.has_value() == quad.has_value() && (!wht || is_3xor_witness(s.vectors(), *wht));
    if (is_small) out.count_ok = count_3xor_triples_wht(s) == count_triples_naive(s.vectors());
    return out;
  };
  const auto a = parallel_map<Out>(small, o.jobs, [&](std::size_t i) { return run(i, true); });
  const auto b = parallel_map<Out>(large, o.jobs, [&](std::size_t i) { return run(i, false); });
  std::size_t disagree = 0, count_bad = 0, yes = 0;
  for (const auto* v : {&a, &b}) {
    for (const auto& x : *v) {
      disagree += !x.agree;
      count_bad += !x.count_ok;
      yes += x.yes;
    }
  }
  finish(r, small + large, disagree + count_bad);
  r.detail("small_instances", static_cast<double>(small));
  r.detail("large_instances", static_cast<double>(large));
  r.detail("yes_instances", static_cast<double>(yes));
  r.detail("disagreements", static_cast<double>(disagree));
  r.detail("count_mismatches", static_cast<double>(count_bad));
  r.summary = std::to_string(small + large - disagree) + "/" + std::to_string(small + large) +
              " agree with the quadratic solver (" + std::to_string(yes) + " yes); " + std::to_string(count_bad) +
              " triple-count mismatches at width <= 8";
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport verify_c3xor_3xor(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t arrays = o.trials_or(500), sets = o.count("sets", 300);
  const std::size_t max_n = o.count("max_n", 128);
  const double max_error = o.param("max_error", 0.01);
  const std::size_t max_bits = std::max<std::size_t>(2, ceil_log2(max_n));

  const auto forward = parallel_map<int>(arrays, o.jobs, [&](std::size_t i) {
    auto rng = make_rng(o.seed, i);
    const std::size_t n = std::size_t{1} << uniform_int<std::size_t>(rng, 2, max_bits);
    const double absent = 0.2 * static_cast<double>(i % 3);
    const auto p = gen_c3xor(n, i % 2 == 0, derive_seed(o.seed, i), 0, absent);
    const auto got = solve_c3xor_via_3xor(p.instance, default_xor3_solver());
    const auto want = solve_c3xor_bruteforce(p.instance);
    return static_cast<int>(got.has_value() != want.has_value() || (got && !is_c3xor_witness(p.instance, *got)));
  });
  const auto backward = parallel_map<int>(sets, o.jobs, [&](std::size_t i) {
    auto rng = make_rng(o.seed ^ 0x3c, i);
    const std::size_t n = uniform_int<std::size_t>(rng, 8, std::max<std::size_t>(8, max_n));
    const auto p = gen_3xor(n, i % 2 == 0, derive_seed(o.seed ^ 0x3c, i));
    Xor3ViaC3xorOptions opt;
    opt.seed = derive_seed(o.seed, i + 77);
    const auto got = solve_3xor_via_c3xor(p.instance, bruteforce_c3xor_solver(), opt);
    const auto want = solve_3xor_quadratic(p.instance);
    return static_cast<int>(got.witness.has_value() != want.has_value() ||
                            (got.witness && !is_3xor_witness(p.instance.vectors(), *got.witness)));
  });
  std::size_t fwd_err = 0, bwd_err = 0;
  for (auto e : forward) fwd_err += static_cast<std::size_t>(e);
  for (auto e : backward) bwd_err += static_cast<std::size_t>(e);
  const double bwd_rate = static_cast<double>(bwd_err) / std::max<double>(1.0, static_cast<double>(sets));
  finish(r, arrays + sets, fwd_err + (bwd_rate > max_error ? 1 : 0));
  r.detail("c3xor_via_3xor_errors", static_cast<double>(fwd_err));
  r.detail("3xor_via_c3xor_errors", static_cast<double>(bwd_err));
  r.detail("3xor_via_c3xor_error_rate", bwd_rate);
  r.detail("max_error", max_error);
  r.summary = "C3XOR via 3XOR " + std::to_string(fwd_err) + " errors in " + std::to_string(arrays) +
              "; 3XOR via C3XOR error rate " + fmt(bwd_rate) + " over " + std::to_string(sets) + " (limit " +
              fmt(max_error) + ")";
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport verify_c3xor_listing(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t arrays = o.trials_or(300), draws = o.count("draws", 100);
  const std::size_t max_n = o.count("max_n", 1024), false_n = o.count("false_pair_n", 1024);
  const std::size_t enum_n = o.count("enumeration_max_n", 64);
  const double max_error = o.param("max_error", 0.01);
  const std::size_t max_bits = std::max<std::size_t>(2, ceil_log2(max_n));

  struct Out {
    bool wrong = false, exhausted = false, edges_ok = true, exact_power = false, enum_checked = false,
         enum_ok = true;
  };
  const auto res = parallel_map<Out>(arrays, o.jobs, [&](std::size_t i) {
    auto rng = make_rng(o.seed, i);
    const std::size_t n = std::size_t{1} << uniform_int<std::size_t>(rng, 2, max_bits);
    const double absent = i % 4 == 3 ? 0.25 : 0.0;
    const auto p = gen_c3xor(n, i % 2 == 0, derive_seed(o.seed, i), 0, absent);
    Out out;
    const auto got = solve_c3xor_via_listing(p.instance, baseline_lister(), 7, derive_seed(o.seed, i + 31));
    const auto want = solve_c3xor_bruteforce(p.instance);
    out.wrong = got.witness.has_value() != want.has_value() || (got.witness && !is_c3xor_witness(p.instance, *got.witness));
    out.exhausted = got.exhausted;

    const auto padded = pad_to_square(p.instance);
    const auto keys = sample_cxor_keys(padded, derive_seed(o.seed, i + 97));
    const auto g = build_cxor_graph(padded, keys);
    const std::size_t side = std::size_t{1} << (padded.index_bits() / 2);
    out.edges_ok = g.graph.graph.edge_count() == 3 * side * padded.present_count();
    out.exact_power = padded.present_count() == padded.size();
    if (padded.size() <= enum_n) {
      out.enum_checked = true;
      const auto triangles = list_all_triangles(g.graph.graph);
      std::set<std::pair<std::size_t, std::size_t>> decoded;
      std::size_t genuine = 0;
      for (const auto& t : triangles) {
        const auto [a, b] = g.decode(t);
        decoded.emplace(a, b);
        genuine += is_c3xor_witness(padded, WitnessC3xor{a, b});
      }
      const auto stars = count_star_pairs(padded, keys);
      out.enum_ok = decoded.size() == triangles.size() && triangles.size() == stars.star_pairs &&
                    genuine == stars.genuine;
    }
    return out;
  });
  std::size_t wrong = 0, exhausted = 0, edge_bad = 0, full_arrays = 0, enum_checked = 0, enum_bad = 0;
  for (const auto& x : res) {
    wrong += x.wrong;
    exhausted += x.exhausted;
    edge_bad += !x.edges_ok;
    full_arrays += x.exact_power && x.edges_ok;
    enum_checked += x.enum_checked;
    enum_bad += !x.enum_ok;
  }
  const double rate = static_cast<double>(wrong) / std::max<double>(1.0, static_cast<double>(arrays));

  // False (⋆)-pairs: hash collisions that are not genuine solutions.
  const auto base = gen_c3xor(false_n, false, derive_seed(o.seed, 0xfa15e));
  const auto padded = pad_to_square(base.instance);
  const double side = std::sqrt(static_cast<double>(padded.size()));
  const auto falses = parallel_map<double>(draws, o.jobs, [&](std::size_t d) {
    const auto c = count_star_pairs(padded, sample_cxor_keys(padded, derive_seed(o.seed ^ 0x5ca, d)));
    return static_cast<double>(c.star_pairs - c.genuine);
  });
  double mean_false = 0;
  for (auto f : falses) mean_false += f;
  mean_false /= std::max<double>(1.0, static_cast<double>(draws));
  const double nn = static_cast<double>(padded.size());
  const double false_bound = 1.5 * nn * nn / side;

  finish(r, arrays + draws, (rate > max_error ? 1 : 0) + edge_bad + enum_bad + (mean_false > false_bound ? 1 : 0));
  r.detail("arrays", static_cast<double>(arrays));
  r.detail("disagreements", static_cast<double>(wrong));
  r.detail("error_rate", rate);
  r.detail("retries_exhausted", static_cast<double>(exhausted));
  r.detail("edge_count_mismatches", static_cast<double>(edge_bad));
  r.detail("full_arrays_with_3n^1.5_edges", static_cast<double>(full_arrays));
  r.detail("enumeration_checked", static_cast<double>(enum_checked));
  r.detail("enumeration_mismatches", static_cast<double>(enum_bad));
  r.detail("false_pair_mean", mean_false);
  r.detail("false_pair_bound", false_bound);
  r.summary = "error rate " + fmt(rate) + " over " + std::to_string(arrays) + " arrays (limit " + fmt(max_error) +
              "); " + std::to_string(edge_bad) + " edge-count mismatches; " + std::to_string(enum_bad) + "/" +
              std::to_string(enum_checked) + " enumeration mismatches; false pairs " + fmt(mean_false) +
              " vs bound " + fmt(false_bound);
  return r;
}

// ---------------------------------------------------------------------------

SuiteReport verify_clique(const SuiteOptions& o) {
  SuiteReport r;
  const std::size_t graphs = o.trials_or(300);
  const std::size_t max_n = o.count("max_n", 60), max_m = o.count("max_m", 150);
  const std::size_t exhaustive = o.count("exhaustive_nodes", 6);
  if (exhaustive > 8) throw std::invalid_argument("exhaustive_nodes must be at most 8");

  auto agree = [](const Graph& g, const DesignFamily& design) -> int {
    try {
      const auto got = detect_4clique_via_6sum(g, design, default_sum6_solver());
      return got.has_clique == detect_4clique_bruteforce(g).has_value() ? 0 : 1;
    } catch (const std::logic_error&) {
      return 1;
    }
  };
  std::size_t exh_graphs = 0, exh_err = 0;
  if (exhaustive >= 4) {
    const auto design = build_design(exhaustive, kCliqueDesignC, DesignStrategy::Polynomial, 0);
    const std::uint64_t masks = std::uint64_t{1} << choose2(exhaustive);
    const auto errs = parallel_map<int>(masks, o.jobs, [&](std::size_t mask) {
      return agree(graph_from_mask(exhaustive, mask), design);
    });
    exh_graphs = masks;
    for (auto e : errs) exh_err += static_cast<std::size_t>(e);
  }
  struct Out {
    int err = 0;
    bool yes = false;
  };
  const auto random = parallel_map<Out>(graphs, o.jobs, [&](std::size_t i) {
    auto rng = make_rng(o.seed, i);
    const std::size_t n = uniform_int<std::size_t>(rng, 4, std::max<std::size_t>(4, max_n));
    const std::size_t m = uniform_int<std::size_t>(rng, 0, std::min(max_m, choose2(n)));
    const Graph base = gen_graph(n, m, 0, derive_seed(o.seed, i));
    auto edges = labelled_edges(base);
    if (i % 2 == 0) {
      std::vector<Label> pick;
      while (pick.size() < 4) {
        const auto v = uniform_int<Label>(rng, 1, static_cast<Label>(n));
        if (std::find(pick.begin(), pick.end(), v) == pick.end()) pick.push_back(v);
      }
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = a + 1; b < 4; ++b) edges.emplace_back(pick[a], pick[b]);
    }
    const Graph g = normalize_graph(edges);
    const auto design =
        build_design(std::max<std::size_t>(2, g.node_count()), kCliqueDesignC, DesignStrategy::Polynomial, 0);
    return Out{agree(g, design), detect_4clique_bruteforce(g).has_value()};
  });
  std::size_t rand_err = 0, yes = 0;
  for (const auto& x : random) {
    rand_err += static_cast<std::size_t>(x.err);
    yes += x.yes;
  }
  finish(r, exh_graphs + graphs, exh_err + rand_err);
  r.detail("exhaustive_nodes", static_cast<double>(exhaustive));
  r.detail("exhaustive_graphs", static_cast<double>(exh_graphs));
  r.detail("exhaustive_errors", static_cast<double>(exh_err));
  r.detail("random_graphs", static_cast<double>(graphs));
  r.detail("random_with_clique", static_cast<double>(yes));
  r.detail("random_errors", static_cast<double>(rand_err));
  r.summary = std::to_string(exh_err) + " errors over all " + std::to_string(exh_graphs) + " graphs on " +
              std::to_string(exhaustive) + " labelled nodes; " + std::to_string(rand_err) + " errors over " +
              std::to_string(graphs) + " random graphs (" + std::to_string(yes) + " with a 4-clique)";
  return r;
}

// ---------------------------------------------------------------------------

double median_seconds(const std::function<void()>& fn, std::size_t reps) {
  std::vector<double> times;
  for (std::size_t i = 0; i < std::max<std::size_t>(1, reps); ++i) {
    const auto t0 = Clock::now();
    fn();
    times.push_back(since(t0));
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::max(y[i], 1e-12));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

SuiteReport verify_scaling(const SuiteOptions& o) {
  SuiteReport r;
  r.indicative = true;
  const std::size_t reps = o.count("reps", 3);
  const double scale = o.param("scale", 1.0);
  std::vector<double> ns, sum_times;
  for (std::size_t n : {1000, 2000, 4000, 8000, 16000}) {
    const auto size = static_cast<std::size_t>(static_cast<double>(n) * scale);
    auto rng = make_rng(o.seed, size);
    // Positive values have no solution, so every pair is scanned.
    std::set<std::int64_t> seen;
    const auto bound = static_cast<std::int64_t>(size) * static_cast<std::int64_t>(size) * 64;
    while (seen.size() < size) seen.insert(uniform_int<std::int64_t>(rng, 1, bound));
    const std::vector<std::int64_t> values(seen.begin(), seen.end());
    ns.push_back(static_cast<double>(size));
    sum_times.push_back(median_seconds([&] { (void)solve_3sum_quadratic(std::span<const std::int64_t>(values)); }, reps));
  }
  std::vector<double> ms, tri_times;
  for (std::size_t m : {10000, 20000, 40000, 80000, 160000}) {
    const auto size = static_cast<std::size_t>(static_cast<double>(m) * scale);
    const Graph g = gen_graph(size / 4, size, 0, derive_seed(o.seed, size));
    ms.push_back(static_cast<double>(size));
    tri_times.push_back(median_seconds([&] { (void)list_all_triangles(g); }, reps));
  }
  const double sum_slope = loglog_slope(ns, sum_times), tri_slope = loglog_slope(ms, tri_times);
  const bool sum_ok = sum_slope >= 1.8 && sum_slope <= 2.2, tri_ok = tri_slope <= 1.6;
  finish(r, 2, !sum_ok + !tri_ok);
  for (std::size_t i = 0; i < ns.size(); ++i) r.detail("3sum_n" + fmt(ns[i], 8) + "_s", sum_times[i]);
  for (std::size_t i = 0; i < ms.size(); ++i) r.detail("listall_m" + fmt(ms[i], 8) + "_s", tri_times[i]);
  r.detail("3sum_slope", sum_slope);
  r.detail("listall_slope", tri_slope);
  r.summary = "3sum.quad slope " + fmt(sum_slope, 3) + " (want 1.8..2.2), tri.listall slope " + fmt(tri_slope, 3) +
              " (want <= 1.6)";
  return r;
}

// ---------------------------------------------------------------------------

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> suites = {
      {"detect-equivalence", 1, "triangle detection via 3SUM/3XOR against the direct detector",
       verify_detect_equivalence},
      {"listing", 2, "listing via detection against full enumeration", verify_listing},
      {"balanced-seed", 3, "seed enumeration finds balanced partitions", verify_balanced_seed},
      {"baran-load", 4, "overloaded elements under linear xor hashing", verify_baran_load},
      {"design", 5, "combinatorial design construction and verification", verify_design_suite},
      {"wht", 6, "Walsh-Hadamard 3XOR against the quadratic solver", verify_wht},
      {"c3xor-3xor", 7, "C3XOR and 3XOR reductions in both directions", verify_c3xor_3xor},
      {"c3xor-listing", 8, "C3XOR via triangle listing", verify_c3xor_listing},
      {"clique", 9, "4-clique via 6SUM over Z3", verify_clique},
      {"scaling", 10, "log-log slopes of the quadratic 3SUM and triangle listing", verify_scaling},
  };
  return suites;
}

const SuiteInfo& find_suite(std::string_view name) {
  for (const auto& s : suite_registry())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

SuiteReport run_suite(const SuiteInfo& suite, const SuiteOptions& options) {
  const auto t0 = Clock::now();
  auto report = suite.run(options);
  report.name = suite.name;
  report.seconds = since(t0);
  return report;
}

}  // namespace triweb
