#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "triweb/core.hpp"
#include "triweb/prand.hpp"

namespace triweb {

struct ListingParams {
  double gamma = 0.05;
  /// High-degree threshold: nodes of degree > delta·m are handled directly.
  double delta = 0.05 * 0.05 / 64;
  /// Closeness of the generator bits to 4-wise independence.
  double alpha = 0.05 * 0.05 / 64;
  /// Subproblems with at most this many edges are listed by brute force.
  std::size_t base_case_edges = 64;
  unsigned k = 4;
  /// Generator seeds tried, in scrambled order, per partition.
  std::size_t max_seed_tries = 4096;
  /// Truly random partitions tried once the seed budget is spent.
  std::size_t random_fallback_tries = 256;
  std::uint64_t fallback_seed = 0;
  /// Record one trace line per subproblem.
  bool trace = false;

  /// Throws std::invalid_argument unless 0 < gamma < 1/4, delta, alpha > 0, C >= 3.
  void validate() const;
};

/// Detector answer; the witness, when given, uses node ids of the queried graph.
struct DetectorAnswer {
  bool found = false;
  std::optional<Triangle> witness;
};

using TriangleDetector = std::function<DetectorAnswer(const Graph&)>;

/// solvers.detect_triangle as a detector.
TriangleDetector baseline_detector();

// ---------------------------------------------------------------------------
// Stage one

struct Stage1Result {
  /// Triangles with a high-degree corner (ids of the input graph), at most t.
  std::vector<Triangle> triangles;
  /// Input minus high-degree nodes; labels are node ids of the input graph.
  Graph residual;
  std::size_t high_degree_nodes = 0;
};

Stage1Result stage1_high_degree(const Graph& g, double delta, std::size_t t);

// ---------------------------------------------------------------------------
// Stage two

/// Three copies of every node (copy k of node v has label k·n + v, n = node
/// count of g) and an edge between copies in different parts for every edge
/// and ordered pair of parts: 6 edges per edge, 6 triangles per triangle.
TripartiteGraph stage2_tripartite(const Graph& g);

/// Node of g a node of stage2_tripartite(g) is a copy of.
NodeId project_copy(const TripartiteGraph& h, std::size_t original_nodes, NodeId v);

// ---------------------------------------------------------------------------
// Stage three

/// Edge set of a subproblem, in node ids of the root tripartite graph. Nodes
/// without edges cannot be part of a triangle and are not tracked.
struct Subproblem {
  std::vector<Edge> edges;
  std::size_t depth = 0;
  /// Child indices from the root; subproblems are ordered by path.
  std::vector<std::uint8_t> path;
  /// A triangle known to lie in this subproblem (root ids).
  std::optional<Triangle> certificate;
};

Subproblem root_subproblem(const TripartiteGraph& h);

struct PartitionOutcome {
  /// Child s1 | s2 << 1 | s3 << 2 holds the edges whose endpoints in part p
  /// have bit s_p; every edge lands in exactly two children.
  std::array<Subproblem, 8> children;
  std::uint64_t seed = 0;
  bool random_fallback = false;
  std::size_t seeds_tried = 0;
  std::size_t max_child_edges = 0;
};

/// Splits with the generator bits of one seed (generator length = node count of h).
PartitionOutcome partition_with_seed(const TripartiteGraph& h, const Subproblem& sub, const SmallBiasGenerator& gen,
                                     std::uint64_t seed);

/// Generator spec used for partitions of h.
SmallBiasSpec partition_spec(const TripartiteGraph& h, const ListingParams& params);

/// First seed, in scrambled enumeration order, whose 8 children all have at
/// most (1/4 + gamma)·|E| edges; then random partitions; then SeedsExhausted.
PartitionOutcome balanced_partition(const TripartiteGraph& h, const Subproblem& sub, const ListingParams& params);

struct ListingStats {
  /// Live subproblems at each recursion level.
  std::vector<std::size_t> live_per_level;
  std::size_t detector_calls = 0;
  std::size_t inherited_certificates = 0;
  std::size_t partitions = 0;
  std::size_t seeds_tried = 0;
  std::size_t random_fallbacks = 0;
  std::size_t base_cases = 0;
  std::size_t peeled_nodes = 0;
  std::size_t stage1_high_degree_nodes = 0;
  std::size_t stage1_triangles = 0;
  /// Largest child/parent edge ratio over all partitions.
  double max_partition_ratio = 0.0;
  /// Some level had more than min{8^i, t'} live subproblems.
  bool live_bound_violated = false;
  /// Some subproblem exceeded m_root·(1/4 + gamma)^depth edges.
  bool edge_bound_violated = false;
  /// "depth edges detector_result seed" per subproblem when tracing.
  std::vector<std::string> trace;
};

/// Level-by-level recursion on h; returns min{t', z(h)} distinct triangles of
/// h (ids of h), or more than that never.
std::vector<Triangle> stage3_recurse(const TripartiteGraph& h, std::size_t t_prime, const TriangleDetector& detector,
                                     const ListingParams& params, ListingStats* stats = nullptr);

struct ListingResult {
  std::vector<Triangle> triangles;
  ListingStats stats;
};

/// min{t, z} distinct triangles of g (ids of g).
ListingResult list_triangles(const Graph& g, std::size_t t, const TriangleDetector& detector,
                             const ListingParams& params = {});

}  // namespace triweb
