#include "triweb/list_reduce.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "triweb/errors.hpp"
#include "triweb/rng.hpp"
#include "triweb/solvers.hpp"

namespace triweb {

void ListingParams::validate() const {
  if (!(gamma > 0.0 && gamma < 0.25)) throw std::invalid_argument("gamma must lie in (0, 1/4)");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (base_case_edges < 3) throw std::invalid_argument("base case edge bound C must be at least 3");
}

TriangleDetector baseline_detector() {
  return [](const Graph& g) {
    auto t = detect_triangle(g);
    return DetectorAnswer{t.has_value(), t};
  };
}

// ---------------------------------------------------------------------------

Stage1Result stage1_high_degree(const Graph& g, double delta, std::size_t t) {
  Stage1Result out;
  const double threshold = delta * static_cast<double>(g.edge_count());
  std::vector<char> high(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (static_cast<double>(g.degree(v)) > threshold) {
      high[v] = 1;
      ++out.high_degree_nodes;
    }
  }
  std::set<Triangle> seen;
  std::vector<char> adjacent(g.node_count(), 0);
  for (NodeId h = 0; h < g.node_count() && out.triangles.size() < t; ++h) {
    if (!high[h]) continue;
    for (auto v : g.neighbors(h)) adjacent[v] = 1;
    for (const auto& e : g.edges()) {
      if (!adjacent[e.u] || !adjacent[e.v]) continue;
      const auto tri = make_triangle(h, e.u, e.v);
      if (seen.insert(tri).second) {
        out.triangles.push_back(tri);
        if (out.triangles.size() >= t) break;
      }
    }
    for (auto v : g.neighbors(h)) adjacent[v] = 0;
  }
  std::vector<Edge> kept;
  for (const auto& e : g.edges())
    if (!high[e.u] && !high[e.v]) kept.push_back(e);
  out.residual = edge_subgraph(g, kept);
  return out;
}

TripartiteGraph stage2_tripartite(const Graph& g) {
  const auto n = static_cast<Label>(g.node_count());
  std::vector<std::pair<Label, Label>> edges;
  edges.reserve(6 * g.edge_count());
  for (const auto& e : g.edges()) {
    for (Label i = 0; i < 3; ++i) {
      for (Label j = 0; j < 3; ++j) {
        if (i != j) edges.emplace_back(i * n + e.u, j * n + e.v);
      }
    }
  }
  TripartiteGraph h;
  h.graph = normalize_graph(edges);
  h.parts = {NodeRange{0, n}, NodeRange{n, 2 * n}, NodeRange{2 * n, 3 * n}};
  return h;
}

NodeId project_copy(const TripartiteGraph& h, std::size_t original_nodes, NodeId v) {
  return static_cast<NodeId>(h.graph.label(v) % static_cast<Label>(original_nodes));
}

// ---------------------------------------------------------------------------

Subproblem root_subproblem(const TripartiteGraph& h) {
  Subproblem s;
  s.edges.assign(h.graph.edges().begin(), h.graph.edges().end());
  return s;
}

SmallBiasSpec partition_spec(const TripartiteGraph& h, const ListingParams& params) {
  return make_small_bias_spec(std::max<std::size_t>(1, h.graph.node_count()), params.k, params.alpha);
}

namespace {

std::vector<std::uint8_t> part_table(const TripartiteGraph& h) {
  std::vector<std::uint8_t> part(h.graph.node_count());
  for (NodeId v = 0; v < part.size(); ++v) part[v] = static_cast<std::uint8_t>(h.part_of(v));
  return part;
}

std::vector<NodeId> sub_nodes(const Subproblem& sub) {
  std::vector<NodeId> nodes;
  nodes.reserve(2 * sub.edges.size());
  for (const auto& e : sub.edges) {
    nodes.push_back(e.u);
    nodes.push_back(e.v);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

/// The two children an edge lands in.
std::array<unsigned, 2> edge_children(const Edge& e, std::span<const std::uint8_t> part,
                                      std::span<const std::uint8_t> bit) {
  const unsigned pu = part[e.u], pv = part[e.v];
  const unsigned p3 = 3 - pu - pv;
  const unsigned base = (unsigned{bit[e.u]} << pu) | (unsigned{bit[e.v]} << pv);
  return {base, base | (1U << p3)};
}

unsigned triangle_child(const Triangle& t, std::span<const std::uint8_t> part, std::span<const std::uint8_t> bit) {
  unsigned idx = 0;
  for (auto v : t.nodes) idx |= unsigned{bit[v]} << part[v];
  return idx;
}

/// Partitioning state shared by all subproblems of one root graph.
class Partitioner {
 public:
  Partitioner(const TripartiteGraph& h, const ListingParams& params)
      : h_(h),
        params_(params),
        part_(part_table(h)),
        gen_(partition_spec(h, params)),
        bit_(h.graph.node_count(), 0),
        fallback_rng_(make_rng(params.fallback_seed, 0xfa11)) {}

  const SmallBiasGenerator& generator() const { return gen_; }

  /// Points current bits at the k-th seed of the scrambled order.
  void load_seed(const std::vector<NodeId>& nodes, std::uint64_t k, std::uint64_t seed) {
    const std::size_t n = h_.graph.node_count();
    if (k < cache_.size() || (k == cache_.size() && (k + 1) * n <= kCacheBytes)) {
      if (k == cache_.size()) {
        const BitVec all = gen_.bits(seed);
        std::vector<std::uint8_t> bytes(n);
        for (std::size_t v = 0; v < n; ++v) bytes[v] = all.get(v) ? 1 : 0;
        cache_.push_back(std::move(bytes));
      }
      current_ = cache_[k];
      return;
    }
    for (auto v : nodes) bit_[v] = gen_.bit(seed, v) ? 1 : 0;
    current_ = bit_;
  }

  void load_random_bits(const std::vector<NodeId>& nodes) {
    for (auto v : nodes) bit_[v] = static_cast<std::uint8_t>(fallback_rng_() & 1U);
    current_ = bit_;
  }

  std::array<std::size_t, 8> child_sizes(const Subproblem& sub) const {
    std::array<std::size_t, 8> sizes{};
    for (const auto& e : sub.edges)
      for (auto c : edge_children(e, part_, current_)) ++sizes[c];
    return sizes;
  }

  PartitionOutcome split(const Subproblem& sub) const {
    PartitionOutcome out;
    for (unsigned c = 0; c < 8; ++c) {
      out.children[c].depth = sub.depth + 1;
      out.children[c].path = sub.path;
      out.children[c].path.push_back(static_cast<std::uint8_t>(c));
    }
    for (const auto& e : sub.edges)
      for (auto c : edge_children(e, part_, current_)) out.children[c].edges.push_back(e);
    if (sub.certificate) out.children[triangle_child(*sub.certificate, part_, current_)].certificate = sub.certificate;
    for (const auto& c : out.children) out.max_child_edges = std::max(out.max_child_edges, c.edges.size());
    return out;
  }

  PartitionOutcome balanced(const Subproblem& sub) {
    const auto nodes = sub_nodes(sub);
    const double bound = (0.25 + params_.gamma) * static_cast<double>(sub.edges.size());
    auto fits = [&] {
      const auto sizes = child_sizes(sub);
      return static_cast<double>(*std::max_element(sizes.begin(), sizes.end())) <= bound;
    };
    const std::size_t seed_bits = gen_.spec().seed_bits;
    const std::uint64_t space = seed_bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << seed_bits);
    const std::uint64_t budget = std::min<std::uint64_t>(params_.max_seed_tries, space);
    for (std::uint64_t k = 0; k < budget; ++k) {
      const std::uint64_t seed = scrambled_seed(k, seed_bits);
      load_seed(nodes, k, seed);
      if (fits()) {
        auto out = split(sub);
        out.seed = seed;
        out.seeds_tried = k + 1;
        return out;
      }
    }
    for (std::size_t r = 0; r < params_.random_fallback_tries; ++r) {
      load_random_bits(nodes);
      if (fits()) {
        auto out = split(sub);
        out.random_fallback = true;
        out.seeds_tried = budget + r + 1;
        return out;
      }
    }
    throw SeedsExhausted("no balanced partition of a subproblem with " + std::to_string(sub.edges.size()) +
                         " edges after " + std::to_string(budget) + " seeds and " +
                         std::to_string(params_.random_fallback_tries) + " random tries");
  }

 private:
  static constexpr std::size_t kCacheBytes = std::size_t{64} << 20;

  const TripartiteGraph& h_;
  const ListingParams& params_;
  std::vector<std::uint8_t> part_;
  SmallBiasGenerator gen_;
  std::vector<std::uint8_t> bit_;
  std::span<const std::uint8_t> current_;
  std::vector<std::vector<std::uint8_t>> cache_;
  Rng fallback_rng_;
};

}  // namespace

PartitionOutcome partition_with_seed(const TripartiteGraph& h, const Subproblem& sub, const SmallBiasGenerator& gen,
                                     std::uint64_t seed) {
  if (gen.spec().n < h.graph.node_count()) throw std::invalid_argument("generator shorter than the node count");
  const auto part = part_table(h);
  std::vector<std::uint8_t> bit(h.graph.node_count(), 0);
  for (auto v : sub_nodes(sub)) bit[v] = gen.bit(seed, v) ? 1 : 0;
  PartitionOutcome out;
  for (unsigned c = 0; c < 8; ++c) {
    out.children[c].depth = sub.depth + 1;
    out.children[c].path = sub.path;
    out.children[c].path.push_back(static_cast<std::uint8_t>(c));
  }
  for (const auto& e : sub.edges)
    for (auto c : edge_children(e, part, bit)) out.children[c].edges.push_back(e);
  if (sub.certificate) out.children[triangle_child(*sub.certificate, part, bit)].certificate = sub.certificate;
  for (const auto& c : out.children) out.max_child_edges = std::max(out.max_child_edges, c.edges.size());
  out.seed = seed;
  out.seeds_tried = 1;
  return out;
}

PartitionOutcome balanced_partition(const TripartiteGraph& h, const Subproblem& sub, const ListingParams& params) {
  params.validate();
  Partitioner p(h, params);
  return p.balanced(sub);
}

// ---------------------------------------------------------------------------

namespace {

class TriangleSink {
 public:
  explicit TriangleSink(std::size_t cap) : cap_(cap) {}

  bool full() const { return list_.size() >= cap_; }
  std::size_t size() const { return list_.size(); }
  std::size_t room() const { return cap_ - list_.size(); }

  void add(const Triangle& t) {
    if (!full() && seen_.insert(t).second) list_.push_back(t);
  }

  std::vector<Triangle> take() { return std::move(list_); }

 private:
  std::size_t cap_;
  std::set<Triangle> seen_;
  std::vector<Triangle> list_;
};

void list_brute_force(const TripartiteGraph& h, std::span<const Edge> edges, TriangleSink& sink) {
  const Graph local = edge_subgraph(h.graph, edges);
  for (const auto& t : list_all_triangles(local, sink.room())) {
    sink.add(make_triangle(static_cast<NodeId>(local.label(t.nodes[0])), static_cast<NodeId>(local.label(t.nodes[1])),
                           static_cast<NodeId>(local.label(t.nodes[2]))));
  }
}

/// Lists triangles through nodes of sub-degree > delta·|E(sub)| and removes those nodes.
std::size_t peel_high_degree(const TripartiteGraph& h, Subproblem& sub, double delta, TriangleSink& sink,
                             std::vector<std::uint32_t>& degree, std::vector<char>& mark) {
  const double threshold = delta * static_cast<double>(sub.edges.size());
  std::vector<NodeId> high;
  for (const auto& e : sub.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  for (const auto& e : sub.edges) {
    for (auto v : {e.u, e.v}) {
      if (degree[v] > threshold && !mark[v]) {
        mark[v] = 1;
        high.push_back(v);
      }
    }
  }
  for (const auto& e : sub.edges) degree[e.u] = degree[e.v] = 0;
  if (high.empty()) return 0;
  std::vector<char> adjacent(h.graph.node_count(), 0);
  for (auto x : high) {
    for (const auto& e : sub.edges) {
      if (e.u == x) adjacent[e.v] = 1;
      if (e.v == x) adjacent[e.u] = 1;
    }
    for (const auto& e : sub.edges)
      if (adjacent[e.u] && adjacent[e.v]) sink.add(make_triangle(x, e.u, e.v));
    for (const auto& e : sub.edges) adjacent[e.u] = adjacent[e.v] = 0;
  }
  std::erase_if(sub.edges, [&](const Edge& e) { return mark[e.u] || mark[e.v]; });
  if (sub.certificate) {
    for (auto v : sub.certificate->nodes)
      if (mark[v]) sub.certificate.reset();
  }
  for (auto x : high) mark[x] = 0;
  return high.size();
}

struct Live {
  Subproblem sub;
  std::string result;
};

}  // namespace

std::vector<Triangle> stage3_recurse(const TripartiteGraph& h, std::size_t t_prime, const TriangleDetector& detector,
                                     const ListingParams& params, ListingStats* stats) {
  params.validate();
  ListingStats local_stats;
  ListingStats& st = stats ? *stats : local_stats;
  TriangleSink sink(t_prime);
  if (t_prime == 0) return {};

  const double root_edges = static_cast<double>(h.graph.edge_count());
  auto trace = [&](const Subproblem& s, const std::string& result, const std::string& seed) {
    if (!params.trace) return;
    std::ostringstream line;
    line << s.depth << ' ' << s.edges.size() << ' ' << result << ' ' << seed;
    st.trace.push_back(line.str());
  };
  auto check_edge_bound = [&](const Subproblem& s) {
    const double limit = root_edges * std::pow(0.25 + params.gamma, static_cast<double>(s.depth));
    if (static_cast<double>(s.edges.size()) > limit + 1e-9) st.edge_bound_violated = true;
  };
  auto certify = [&](Subproblem& s) -> std::string {
    if (s.certificate) {
      ++st.inherited_certificates;
      return "inherited";
    }
    if (s.edges.size() < 3) return "no";
    ++st.detector_calls;
    const Graph local = edge_subgraph(h.graph, s.edges);
    const auto answer = detector(local);
    if (!answer.found) return "no";
    if (answer.witness) {
      const auto& w = answer.witness->nodes;
      s.certificate = make_triangle(static_cast<NodeId>(local.label(w[0])), static_cast<NodeId>(local.label(w[1])),
                                    static_cast<NodeId>(local.label(w[2])));
    }
    return "yes";
  };

  Live root{root_subproblem(h), ""};
  ++st.detector_calls;
  const auto root_answer = detector(h.graph);
  root.result = root_answer.found ? "yes" : "no";
  if (root_answer.witness) root.sub.certificate = root_answer.witness;
  if (!root_answer.found) {
    st.live_per_level.push_back(0);
    trace(root.sub, root.result, "-");
    return {};
  }

  Partitioner partitioner(h, params);
  std::vector<std::uint32_t> degree(h.graph.node_count(), 0);
  std::vector<char> mark(h.graph.node_count(), 0);
  std::vector<Live> live;
  live.push_back(std::move(root));
  std::size_t level = 0;
  while (!live.empty() && !sink.full()) {
    st.live_per_level.push_back(live.size());
    const double cap8 = std::pow(8.0, static_cast<double>(level));
    if (static_cast<double>(live.size()) > std::min(cap8, static_cast<double>(t_prime))) st.live_bound_violated = true;
    std::vector<Live> next;
    for (auto& cur : live) {
      if (sink.full()) break;
      Subproblem& sub = cur.sub;
      if (sub.edges.size() > params.base_case_edges) {
        st.peeled_nodes += peel_high_degree(h, sub, params.delta, sink, degree, mark);
      }
      if (sub.edges.size() <= params.base_case_edges) {
        ++st.base_cases;
        list_brute_force(h, sub.edges, sink);
        trace(sub, cur.result, "-");
        continue;
      }
      const auto split = partitioner.balanced(sub);
      ++st.partitions;
      st.seeds_tried += split.seeds_tried;
      if (split.random_fallback) ++st.random_fallbacks;
      st.max_partition_ratio = std::max(st.max_partition_ratio, static_cast<double>(split.max_child_edges) /
                                                                    static_cast<double>(sub.edges.size()));
      trace(sub, cur.result, split.random_fallback ? "random" : std::to_string(split.seed));
      for (auto child : split.children) {
        check_edge_bound(child);
        std::string result = certify(child);
        if (result == "no") {
          trace(child, result, "-");
          continue;
        }
        next.push_back(Live{std::move(child), std::move(result)});
      }
    }
    if (next.size() > sink.room()) next.resize(sink.room());
    live = std::move(next);
    ++level;
  }
  return sink.take();
}

ListingResult list_triangles(const Graph& g, std::size_t t, const TriangleDetector& detector,
                             const ListingParams& params) {
  params.validate();
  if (t == 0) throw std::invalid_argument("t must be at least 1");
  ListingResult result;
  auto s1 = stage1_high_degree(g, params.delta, t);
  result.stats.stage1_high_degree_nodes = s1.high_degree_nodes;
  result.stats.stage1_triangles = s1.triangles.size();
  result.triangles = std::move(s1.triangles);
  if (result.triangles.size() >= t) {
    result.triangles.resize(t);
    return result;
  }
  const Graph& residual = s1.residual;
  const TripartiteGraph h = stage2_tripartite(residual);
  const std::size_t remaining = t - result.triangles.size();
  const auto copies = stage3_recurse(h, 6 * remaining, detector, params, &result.stats);
  std::set<Triangle> seen(result.triangles.begin(), result.triangles.end());
  for (const auto& c : copies) {
    std::array<NodeId, 3> nodes{};
    for (int k = 0; k < 3; ++k) {
      const NodeId r = project_copy(h, residual.node_count(), c.nodes[k]);
      nodes[k] = static_cast<NodeId>(residual.label(r));
    }
    const auto tri = make_triangle(nodes[0], nodes[1], nodes[2]);
    if (seen.insert(tri).second) {
      result.triangles.push_back(tri);
      if (result.triangles.size() >= t) break;
    }
  }
  return result;
}

}  // namespace triweb
