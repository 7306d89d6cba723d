#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "triweb/clique_reduce.hpp"
#include "triweb/detect_reduce.hpp"
#include "triweb/errors.hpp"
#include "triweb/generate.hpp"
#include "triweb/io.hpp"
#include "triweb/list_reduce.hpp"
#include "triweb/solvers.hpp"
#include "triweb/verify.hpp"
#include "triweb/xor_reduce.hpp"

using namespace triweb;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TRIWEB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("TRIWEB_SEED is not a number: ") + env);
    }
  }
  return 1;
}

template <std::size_t N>
std::string join_indices(const std::array<std::size_t, N>& idx) {
  auto sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (auto i : sorted) out += " " + std::to_string(i);
  return out;
}

std::string join_labels(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<Label> labels;
  for (auto v : nodes) labels.push_back(g.label(v));
  std::sort(labels.begin(), labels.end());
  std::string out;
  for (auto l : labels) out += " " + std::to_string(l);
  return out;
}

int print_verdict(bool yes, const std::string& witness) {
  std::cout << (yes ? "YES" + witness : std::string("NO")) << '\n';
  return yes ? kExitYes : kExitNo;
}

int print_triangles(const Graph& g, const std::vector<Triangle>& triangles) {
  if (triangles.empty()) return print_verdict(false, "");
  std::cout << "YES " << triangles.size() << '\n';
  for (const auto& t : triangles) std::cout << join_labels(g, t.nodes).substr(1) << '\n';
  return kExitYes;
}

Instance load(const std::string& path, Format format) {
  if (path == "-") return read_instance(std::cin, format);
  return read_instance(std::filesystem::path(path), format);
}

/// "1k,2k,4000" -> {1000, 2000, 4000}.
std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t mult = 1;
    const char last = static_cast<char>(std::tolower(static_cast<unsigned char>(item.back())));
    if (last == 'k' || last == 'm') {
      mult = last == 'k' ? 1000 : 1000000;
      item.pop_back();
    }
    std::size_t pos = 0;
    const auto v = std::stoull(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad size '" + item + "'");
    out.push_back(static_cast<std::size_t>(v) * mult);
  }
  if (out.empty()) throw std::invalid_argument("no sizes given");
  return out;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string kind;
  std::size_t n = 0, m = 0, plant = 0, width = 0;
  bool planted = false;
  double absent = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  Instance inst;
  std::string witness;
  if (a.kind == "graph") {
    inst = gen_graph(a.n, a.m, a.plant, a.seed);
  } else if (a.kind == "c3xor") {
    const auto p = gen_c3xor(a.n, a.planted, a.seed, a.width, a.absent);
    if (p.witness) witness = std::to_string(p.witness->i) + " " + std::to_string(p.witness->j);
    inst = p.instance;
  } else if (a.kind == "3xor") {
    const auto p = gen_3xor(a.n, a.planted, a.seed, a.width);
    if (p.witness) witness = join_indices(p.witness->idx).substr(1);
    inst = p.instance;
  } else {
    const auto g = gen_planted_instance(parse_instance_kind(a.kind), a.n, a.planted, a.seed);
    inst = g.instance;
    if (g.witness) {
      std::visit(
          [&](const auto& w) {
            using W = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<W, WitnessC3xor>) {
              witness = std::to_string(w.i) + " " + std::to_string(w.j);
            } else {
              witness = join_indices(w.idx).substr(1);
            }
          },
          *g.witness);
    }
  }
  if (a.out.empty() || a.out == "-") {
    write_instance(std::cout, inst);
  } else {
    write_instance(inst, a.out);
  }
  if (!witness.empty()) std::cerr << "# planted " << witness << '\n';
  return kExitYes;
}

// ---------------------------------------------------------------------------
// solve

struct SolverEntry {
  Format format;
  std::string description;
};

const std::map<std::string, SolverEntry>& solver_registry() {
  static const std::map<std::string, SolverEntry> solvers = {
      {"3sum.quad", {Format::Ints, "sort and two pointers, O(n^2)"}},
      {"3xor.quad", {Format::HexVecs, "pair scan with a hash index, O(n^2)"}},
      {"3xor.wht", {Format::HexVecs, "Walsh-Hadamard count, O(l 2^l)"}},
      {"c3xor.brute", {Format::C3xor, "all index pairs, O(n^2)"}},
      {"tri.detect", {Format::Edges, "forward adjacency intersection, O(m^1.5)"}},
      {"tri.listall", {Format::Edges, "all triangles, O(m^1.5)"}},
      {"4clique.brute", {Format::Edges, "common neighbours of triangles"}},
      {"6sum.mitm", {Format::Z3Vecs, "meet in the middle over triples, O(n^3)"}},
  };
  return solvers;
}

int run_solver(const std::string& name, const Instance& inst) {
  if (name == "3sum.quad") {
    const auto w = solve_3sum_quadratic(std::get<IntegerSet>(inst));
    return print_verdict(w.has_value(), w ? join_indices(w->idx) : "");
  }
  if (name == "3xor.quad" || name == "3xor.wht") {
    const auto& s = std::get<BitVectorSet>(inst);
    const auto w = name == "3xor.quad" ? solve_3xor_quadratic(s) : solve_3xor_wht(s);
    return print_verdict(w.has_value(), w ? join_indices(w->idx) : "");
  }
  if (name == "c3xor.brute") {
    const auto w = solve_c3xor_bruteforce(std::get<C3xorArray>(inst));
    return print_verdict(w.has_value(), w ? " " + std::to_string(w->i) + " " + std::to_string(w->j) : "");
  }
  if (name == "tri.detect") {
    const auto& g = std::get<Graph>(inst);
    const auto t = detect_triangle(g);
    return print_verdict(t.has_value(), t ? join_labels(g, t->nodes) : "");
  }
  if (name == "tri.listall") {
    const auto& g = std::get<Graph>(inst);
    return print_triangles(g, list_all_triangles(g));
  }
  if (name == "4clique.brute") {
    const auto& g = std::get<Graph>(inst);
    const auto c = detect_4clique_bruteforce(g);
    return print_verdict(c.has_value(), c ? join_labels(g, *c) : "");
  }
  if (name == "6sum.mitm") {
    const auto w = solve_6sum_z3(std::get<Z3VectorSet>(inst));
    return print_verdict(w.has_value(), w ? join_indices(w->idx) : "");
  }
  throw std::invalid_argument("unknown solver '" + name + "'");
}

int cmd_solve(const std::string& solver, const std::string& input, const std::string& format) {
  const auto& reg = solver_registry();
  auto it = reg.find(solver);
  if (it == reg.end()) throw std::invalid_argument("unknown solver '" + solver + "'");
  return run_solver(solver, load(input, format.empty() ? it->second.format : parse_format(format)));
}

// ---------------------------------------------------------------------------
// reduce

struct ReduceArgs {
  std::string pipeline;
  std::string input;
  std::string format;
  std::string t;
  std::uint64_t seed = 0;
  std::size_t rounds = 20;
  double delta = ListingParams{}.delta;
  bool trace = false;
};

class StageLog {
 public:
  template <class F>
  auto run(const std::string& name, F fn) {
    const auto t0 = Clock::now();
    auto result = fn();
    rows_.push_back({name, since(t0)});
    return result;
  }
  void note(const std::string& key, const std::string& value) { notes_.emplace_back(key, value); }
  void print(std::ostream& out) const {
    for (const auto& [name, s] : rows_) out << "# stage\t" << name << '\t' << std::fixed << std::setprecision(6) << s << "s\n";
    out.unsetf(std::ios::fixed);
    for (const auto& [k, v] : notes_) out << "# " << k << '\t' << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, double>> rows_;
  std::vector<std::pair<std::string, std::string>> notes_;
};

struct PipelineEntry {
  Format format;
  std::string description;
};

const std::map<std::string, PipelineEntry>& pipeline_registry() {
  static const std::map<std::string, PipelineEntry> pipelines = {
      {"tri-detect-via-3xor", {Format::Edges, "triangle detection by one 3XOR call (:det or :rand)"}},
      {"tri-detect-via-3sum", {Format::Edges, "triangle detection by one 3SUM call (:det or :rand)"}},
      {"tri-detect-via-3xor-decision", {Format::Edges, "yes/no 3XOR oracle, randomized labels, AND over rounds"}},
      {"tri-detect-via-3sum-decision", {Format::Edges, "yes/no 3SUM oracle, randomized labels, AND over rounds"}},
      {"tri-list-via-detect", {Format::Edges, "listing via the direct detector"}},
      {"tri-list-via-detect-via-3sum", {Format::Edges, "listing via detection via 3SUM"}},
      {"tri-list-via-detect-via-3xor", {Format::Edges, "listing via detection via 3XOR"}},
      {"3xor-length-reduced", {Format::HexVecs, "3XOR after hashing to 3 lg n bits"}},
      {"3xor-via-c3xor", {Format::HexVecs, "3XOR via bucketed C3XOR arrays"}},
      {"3xor-via-c3xor-via-listing", {Format::HexVecs, "3XOR via C3XOR via triangle listing"}},
      {"c3xor-via-3xor", {Format::C3xor, "C3XOR via one 3XOR call"}},
      {"c3xor-via-listing", {Format::C3xor, "C3XOR via triangle listing"}},
      {"4clique-via-6sum", {Format::Edges, "4-clique via one 6SUM call over Z3"}},
  };
  return pipelines;
}

TriangleDetector detector_for(const std::string& via, std::uint64_t seed) {
  if (via.empty()) return baseline_detector();
  DetectOptions opt;
  opt.seed = seed;
  if (via == "3sum") {
    return [opt](const Graph& g) {
      const auto r = detect_via_3sum(g, default_sum3_solver(), opt);
      return DetectorAnswer{r.has_triangle, r.triangle};
    };
  }
  return [opt](const Graph& g) {
    const auto r = detect_via_3xor(g, default_xor3_solver(), opt);
    return DetectorAnswer{r.has_triangle, r.triangle};
  };
}

int run_pipeline(const ReduceArgs& a, const std::string& name, const std::string& variant, const Instance& inst,
                 StageLog& log) {
  if (name.rfind("tri-detect-via-", 0) == 0) {
    const auto& g = std::get<Graph>(inst);
    log.note("graph", std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) + " edges");
    DetectOptions opt;
    opt.seed = a.seed;
    opt.confidence_rounds = a.rounds;
    const bool decision = name.size() > 9 && name.substr(name.size() - 9) == "-decision";
    if (decision || variant == "rand") opt.mode = LabelMode::Randomized;
    else if (!variant.empty() && variant != "det") throw std::invalid_argument("unknown variant ':" + variant + "'");
    const bool via_xor = name.find("3xor") != std::string::npos;
    const auto r = log.run("detect", [&] {
      if (decision && via_xor) {
        return detect_via_3xor_decision(
            g, [](std::span<const BitVec> v) { return solve_3xor_quadratic(v).has_value(); }, opt);
      }
      if (decision) {
        return detect_via_3sum_decision(
            g, [](std::span<const BigInt> v) { return solve_3sum_hashed(v).has_value(); }, opt);
      }
      return via_xor ? detect_via_3xor(g, default_xor3_solver(), opt) : detect_via_3sum(g, default_sum3_solver(), opt);
    });
    log.note("rounds", std::to_string(r.rounds));
    log.note("spurious", std::to_string(r.spurious));
    log.note("certified", r.certified ? "yes" : "no");
    return print_verdict(r.has_triangle, r.triangle ? join_labels(g, r.triangle->nodes) : "");
  }
  if (name.rfind("tri-list-via-detect", 0) == 0) {
    const auto& g = std::get<Graph>(inst);
    std::size_t t = g.edge_count();
    if (!a.t.empty() && a.t != "m") t = std::stoull(a.t);
    ListingParams params;
    params.delta = a.delta;
    params.fallback_seed = a.seed;
    params.trace = a.trace;
    const std::string via = name == "tri-list-via-detect" ? "" : name.substr(std::string("tri-list-via-detect-via-").size());
    const auto res = log.run("list", [&] { return list_triangles(g, t, detector_for(via, a.seed), params); });
    const auto& s = res.stats;
    log.note("t", std::to_string(t));
    log.note("stage1_high_degree_nodes", std::to_string(s.stage1_high_degree_nodes));
    log.note("stage1_triangles", std::to_string(s.stage1_triangles));
    log.note("detector_calls", std::to_string(s.detector_calls));
    log.note("partitions", std::to_string(s.partitions));
    log.note("seeds_tried", std::to_string(s.seeds_tried));
    log.note("random_fallbacks", std::to_string(s.random_fallbacks));
    std::string live;
    for (auto x : s.live_per_level) live += (live.empty() ? "" : ",") + std::to_string(x);
    log.note("live_per_level", live.empty() ? "-" : live);
    for (const auto& line : s.trace) log.note("trace", line);
    return print_triangles(g, res.triangles);
  }
  if (name == "3xor-length-reduced") {
    const auto& s = std::get<BitVectorSet>(inst);
    log.note("input", std::to_string(s.size()) + " vectors of width " + std::to_string(s.width()));
    log.note("target_width", std::to_string(reduced_length(s.size())));
    const auto r = log.run("solve", [&] { return solve_3xor_length_reduced(s, default_xor3_solver(), a.seed, a.rounds); });
    log.note("rounds", std::to_string(r.rounds));
    log.note("spurious", std::to_string(r.spurious));
    return print_verdict(r.witness.has_value(), r.witness ? join_indices(r.witness->idx) : "");
  }
  if (name == "3xor-via-c3xor" || name == "3xor-via-c3xor-via-listing") {
    const auto& s = std::get<BitVectorSet>(inst);
    log.note("input", std::to_string(s.size()) + " vectors of width " + std::to_string(s.width()));
    C3xorSolver inner = bruteforce_c3xor_solver();
    if (name == "3xor-via-c3xor-via-listing") {
      inner = [seed = a.seed](const C3xorArray& arr) {
        return solve_c3xor_via_listing(arr, baseline_lister(), 7, seed).witness;
      };
    }
    Xor3ViaC3xorOptions opt;
    opt.seed = a.seed;
    const auto r = log.run("solve", [&] { return solve_3xor_via_c3xor(s, inner, opt); });
    log.note("bucket_bits", std::to_string(r.bucket_bits));
    log.note("overloaded_elements", std::to_string(r.overloaded_elements));
    log.note("arrays_built", std::to_string(r.arrays_built));
    log.note("solver_calls", std::to_string(r.solver_calls));
    return print_verdict(r.witness.has_value(), r.witness ? join_indices(r.witness->idx) : "");
  }
  if (name == "c3xor-via-3xor" || name == "c3xor-via-listing") {
    const auto& arr = std::get<C3xorArray>(inst);
    log.note("input", std::to_string(arr.size()) + " cells, " + std::to_string(arr.present_count()) + " present");
    std::optional<WitnessC3xor> w;
    if (name == "c3xor-via-3xor") {
      w = log.run("solve", [&] { return solve_c3xor_via_3xor(arr, default_xor3_solver()); });
    } else {
      const auto r = log.run("solve", [&] { return solve_c3xor_via_listing(arr, baseline_lister(), 7, a.seed); });
      log.note("rounds", std::to_string(r.rounds));
      log.note("triangles_examined", std::to_string(r.triangles_examined));
      log.note("exhausted", r.exhausted ? "yes" : "no");
      w = r.witness;
    }
    return print_verdict(w.has_value(), w ? " " + std::to_string(w->i) + " " + std::to_string(w->j) : "");
  }
  if (name == "4clique-via-6sum") {
    const auto& g = std::get<Graph>(inst);
    log.note("graph", std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) + " edges");
    const auto r = log.run("detect", [&] { return detect_4clique_via_6sum(g); });
    log.note("6sum_elements", std::to_string(r.elements));
    log.note("label_length", std::to_string(r.label_length));
    return print_verdict(r.has_clique, r.clique ? join_labels(g, *r.clique) : "");
  }
  throw std::invalid_argument("unknown pipeline '" + name + "'");
}

int cmd_reduce(const ReduceArgs& a) {
  const auto colon = a.pipeline.find(':');
  const std::string name = a.pipeline.substr(0, colon);
  const std::string variant = colon == std::string::npos ? "" : a.pipeline.substr(colon + 1);
  const auto& reg = pipeline_registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw std::invalid_argument("unknown pipeline '" + name + "'");
  StageLog log;
  const auto inst = log.run("read", [&] { return load(a.input, a.format.empty() ? it->second.format : parse_format(a.format)); });
  const int code = run_pipeline(a, name, variant, inst, log);
  log.print(std::cerr);
  return code;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& suite, SuiteOptions options, const std::vector<std::string>& extra) {
  for (const auto& kv : extra) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
    options.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  const auto report = run_suite(find_suite(suite), options);
  std::cout << report.summary << '\n';
  for (const auto& row : report.details) std::cout << row << '\n';
  std::cout << (report.passed ? "PASS" : (report.indicative ? "WARN" : "FAIL")) << ' ' << report.name << ' '
            << (report.trials - report.failures) << '/' << report.trials << " in " << std::setprecision(3)
            << report.seconds << "s\n";
  return report.passed || report.indicative ? kExitYes : kExitNo;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::string problem;
  std::string sizes = "1k,2k,4k";
  std::size_t reps = 3;
  std::string t;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool tsv = false;
};

struct BenchRow {
  std::size_t size = 0;
  double median = 0;
  std::vector<std::pair<std::string, double>> stages;
};

std::vector<std::int64_t> positive_values(std::size_t n, std::uint64_t seed) {
  auto rng = make_rng(seed, n);
  std::set<std::int64_t> seen;
  const auto bound = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n) * 64 + 8;
  while (seen.size() < n) seen.insert(uniform_int<std::int64_t>(rng, 1, bound));
  return {seen.begin(), seen.end()};
}

BitVectorSet random_set(std::size_t n, std::size_t width, std::uint64_t seed) {
  auto rng = make_rng(seed, n);
  std::set<BitVec> seen;
  while (seen.size() < n) seen.insert(random_bitvec(rng, width));
  return BitVectorSet({seen.begin(), seen.end()}, width);
}

BenchRow bench_one(const BenchArgs& a, std::size_t size) {
  BenchRow row;
  row.size = size;
  const std::string& p = a.problem;
  const std::uint64_t seed = derive_seed(a.seed, size);
  auto graph = [&] { return gen_graph(std::max<std::size_t>(size / 4, 8), size, 0, seed); };
  if (p == "3sum.quad") {
    const auto v = positive_values(size, seed);
    row.median = median_seconds([&] { (void)solve_3sum_quadratic(std::span<const std::int64_t>(v)); }, a.reps);
  } else if (p == "3xor.quad" || p == "3xor.wht") {
    std::size_t width = std::max<std::size_t>(3, 3 * ceil_log2(size));
    if (p == "3xor.wht") width = std::min<std::size_t>(width, std::max<std::size_t>(ceil_log2(size) + 1, 20));
    const auto s = random_set(size, width, seed);
    row.median = median_seconds(
        [&] { (void)(p == "3xor.quad" ? solve_3xor_quadratic(s) : solve_3xor_wht(s)); }, a.reps);
  } else if (p == "c3xor.brute") {
    auto n = std::size_t{1} << std::max<std::size_t>(2, ceil_log2(size));
    const auto arr = gen_c3xor(n, false, seed).instance;
    row.size = n;
    row.median = median_seconds([&] { (void)solve_c3xor_bruteforce(arr); }, a.reps);
  } else if (p == "tri.detect" || p == "tri.listall" || p == "4clique.brute") {
    const Graph g = graph();
    row.median = median_seconds(
        [&] {
          if (p == "tri.detect") (void)detect_triangle(g);
          else if (p == "tri.listall") (void)list_all_triangles(g);
          else (void)detect_4clique_bruteforce(g);
        },
        a.reps);
  } else if (p == "6sum.mitm") {
    const auto s = gen_6sum(size, false, seed).instance;
    row.median = median_seconds([&] { (void)solve_6sum_z3(s); }, a.reps);
  } else if (p.rfind("tri-list-via-detect", 0) == 0) {
    const Graph g = graph();
    const std::size_t t = a.t.empty() || a.t == "m" ? g.edge_count() : std::stoull(a.t);
    const std::string via = p == "tri-list-via-detect" ? "" : p.substr(std::string("tri-list-via-detect-via-").size());
    const auto detector = detector_for(via, a.seed);
    ListingParams params;
    params.delta = 0.005;
    std::vector<double> s1, s2, s3, total;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, a.reps); ++r) {
      const auto t0 = Clock::now();
      const auto stage1 = stage1_high_degree(g, params.delta, t);
      const double a1 = since(t0);
      const auto h = stage2_tripartite(stage1.residual);
      const double a2 = since(t0);
      const std::size_t room = t - stage1.triangles.size();
      if (room > 0) (void)stage3_recurse(h, 6 * room, detector, params);
      const double a3 = since(t0);
      s1.push_back(a1);
      s2.push_back(a2 - a1);
      s3.push_back(a3 - a2);
      total.push_back(a3);
    }
    auto med = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      return v[v.size() / 2];
    };
    row.median = med(total);
    row.stages = {{"stage1_s", med(s1)}, {"stage2_s", med(s2)}, {"stage3_s", med(s3)}};
  } else {
    throw std::invalid_argument("unknown bench problem '" + p + "'");
  }
  return row;
}

int cmd_bench(const BenchArgs& a) {
  const auto sizes = parse_sizes(a.sizes);
  std::vector<BenchRow> rows;
  // Timings run one at a time; --jobs only spreads instance generation.
  if (a.jobs > 1) {
    rows = parallel_map<BenchRow>(sizes.size(), a.jobs, [&](std::size_t i) { return bench_one(a, sizes[i]); });
  } else {
    for (auto s : sizes) rows.push_back(bench_one(a, s));
  }
  std::vector<std::string> header{"problem", "size", "reps", "median_s"};
  for (const auto& [k, v] : rows.front().stages) header.push_back(k);
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    std::ostringstream m;
    m << std::setprecision(6) << r.median;
    std::vector<std::string> line{a.problem, std::to_string(r.size), std::to_string(a.reps), m.str()};
    for (const auto& [k, v] : r.stages) {
      std::ostringstream s;
      s << std::setprecision(6) << v;
      line.push_back(s.str());
    }
    cells.push_back(line);
  }
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(static_cast<double>(r.size));
    ys.push_back(r.median);
  }
  std::ostringstream slope;
  if (rows.size() >= 2) slope << std::setprecision(3) << loglog_slope(xs, ys);
  if (a.tsv) {
    for (std::size_t i = 0; i < header.size(); ++i) std::cout << (i ? "\t" : "") << header[i];
    std::cout << '\n';
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) std::cout << (i ? "\t" : "") << line[i];
      std::cout << '\n';
    }
  } else {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
      widths[i] = header[i].size();
      for (const auto& line : cells) widths[i] = std::max(widths[i], line[i].size());
    }
    auto print = [&](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i) std::cout << (i ? "  " : "") << std::setw(static_cast<int>(widths[i])) << line[i];
      std::cout << '\n';
    };
    print(header);
    for (const auto& line : cells) print(line);
  }
  if (!slope.str().empty()) std::cout << "# slope\t" << slope.str() << '\n';
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triweb: reductions between 3SUM, 3XOR, C3XOR, 6SUM and triangle problems"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  try {
    seed = default_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  GenArgs gen;
  gen.seed = seed;
  auto* g = app.add_subcommand("gen", "generate an instance");
  g->add_option("kind", gen.kind, "graph, 3sum, 3xor, c3xor or 6sum")
      ->required()
      ->check(CLI::IsMember({"graph", "3sum", "3xor", "c3xor", "6sum", "6sum_z3"}));
  g->add_option("--n", gen.n, "elements or nodes")->required();
  g->add_option("--m", gen.m, "edges (graph)");
  g->add_option("--plant", gen.plant, "planted triangles (graph)");
  g->add_flag("--planted", gen.planted, "plant a solution");
  g->add_option("--width", gen.width, "vector width (3xor, c3xor)");
  g->add_option("--absent", gen.absent, "fraction of ABSENT cells (c3xor)");
  g->add_option("--seed", gen.seed, "seed (default TRIWEB_SEED or 1)");
  g->add_option("-o,--output", gen.out, "output file (default stdout)");

  std::string solver, input, format;
  auto* s = app.add_subcommand("solve", "run one solver");
  s->add_option("solver", solver, "registered solver")->required();
  s->add_option("input", input, "instance file, - for stdin")->required();
  s->add_option("--format", format, "input format override");
  s->add_option("--seed", seed, "seed");

  ReduceArgs red;
  auto* r = app.add_subcommand("reduce", "run a reduction pipeline");
  r->add_option("pipeline", red.pipeline, "pipeline[:variant]")->required();
  r->add_option("input", red.input, "instance file, - for stdin")->required();
  r->add_option("--format", red.format, "input format override");
  r->add_option("--t", red.t, "triangles to list (number or m)");
  r->add_option("--seed", red.seed, "seed");
  r->add_option("--rounds", red.rounds, "randomized labelings or retries");
  r->add_option("--delta", red.delta, "high-degree threshold for listing");
  r->add_flag("--trace", red.trace, "per-subproblem trace lines");

  SuiteOptions vopt;
  std::string suite;
  std::vector<std::string> extra;
  std::map<std::string, double> named;
  auto* v = app.add_subcommand("verify", "run an oracle or invariant suite");
  v->add_option("suite", suite, "suite name")->required();
  v->add_option("--trials", vopt.trials, "trials (suite default when omitted)");
  v->add_option("--seed", vopt.seed, "seed");
  v->add_option("--jobs", vopt.jobs, "worker threads")->check(CLI::PositiveNumber);
  for (const char* key : {"n", "R", "draws", "m", "c", "delta"}) {
    v->add_option_function<double>(std::string("--") + key, [&named, key](double x) { named[key] = x; },
                                   std::string("suite parameter ") + key);
  }
  v->add_option("--param", extra, "extra key=value parameters");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "time a solver or pipeline across sizes");
  b->add_option("problem", bench.problem, "solver or pipeline name")->required();
  b->add_option("--sizes", bench.sizes, "comma-separated sizes, k and m suffixes allowed");
  b->add_option("--reps", bench.reps, "repetitions per size");
  b->add_option("--t", bench.t, "listing target (number or m)");
  b->add_option("--seed", bench.seed, "seed");
  b->add_option("--jobs", bench.jobs, "threads for instance generation")->check(CLI::PositiveNumber);
  b->add_flag("--tsv", bench.tsv, "tab-separated rows");

  auto* l = app.add_subcommand("list", "list solvers, pipelines and suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitYes : kExitError;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (g->parsed()) return cmd_gen(gen);
    if (s->parsed()) return cmd_solve(solver, input, format);
    if (r->parsed()) {
      if (!r->count("--seed")) red.seed = seed;
      return cmd_reduce(red);
    }
    if (v->parsed()) {
      if (!v->count("--seed")) vopt.seed = seed;
      vopt.params = named;
      return cmd_verify(suite, vopt, extra);
    }
    if (b->parsed()) {
      if (!b->count("--seed")) bench.seed = seed;
      return cmd_bench(bench);
    }
    if (l->parsed()) {
      std::cout << "solvers\n";
      for (const auto& [name, e] : solver_registry()) std::cout << "  " << name << "\t" << e.description << '\n';
      std::cout << "pipelines\n";
      for (const auto& [name, e] : pipeline_registry()) std::cout << "  " << name << "\t" << e.description << '\n';
      std::cout << "suites\n";
      for (const auto& su : suite_registry()) std::cout << "  " << su.name << "\t" << su.description << '\n';
      return kExitYes;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
