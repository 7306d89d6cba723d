#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "triweb/bitvec.hpp"
#include "triweb/z3vec.hpp"

namespace triweb {

using NodeId = std::uint32_t;
using Label = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;

/// Default exponent c in the magnitude bound n^c of integer instances.
inline constexpr unsigned kDefaultMagnitudeExponent = 3;

/// Smallest r with 2^r >= n (0 for n <= 1).
std::size_t ceil_log2(std::size_t n);
bool is_power_of_two(std::size_t n);

// ---------------------------------------------------------------------------
// Witnesses

/// Three pairwise distinct positions into an instance.
struct Witness3 {
  std::array<std::size_t, 3> idx{};
  bool operator==(const Witness3&) const = default;
};

/// Pair (i, j) with A[i] ⊕ A[j] = A[i ⊕ j].
struct WitnessC3xor {
  std::size_t i = 0;
  std::size_t j = 0;
  bool operator==(const WitnessC3xor&) const = default;
};

/// Six pairwise distinct positions.
struct Witness6 {
  std::array<std::size_t, 6> idx{};
  bool operator==(const Witness6&) const = default;
};

// ---------------------------------------------------------------------------
// Problem instances

/// 3SUM instance: distinct integers with |v| <= magnitude_bound.
class IntegerSet {
 public:
  IntegerSet() = default;
  IntegerSet(std::vector<std::int64_t> values, std::int64_t magnitude_bound);

  /// Bound n^exponent (at least 1).
  static std::int64_t default_bound(std::size_t n, unsigned exponent = kDefaultMagnitudeExponent);

  std::span<const std::int64_t> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::int64_t magnitude_bound() const noexcept { return magnitude_bound_; }

  bool operator==(const IntegerSet&) const = default;

 private:
  std::vector<std::int64_t> values_;
  std::int64_t magnitude_bound_ = 1;
};

/// 3XOR instance: distinct bit vectors of a common width.
class BitVectorSet {
 public:
  BitVectorSet() = default;
  BitVectorSet(std::vector<BitVec> vectors, std::size_t width);

  std::span<const BitVec> vectors() const noexcept { return vectors_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t width() const noexcept { return width_; }

  bool operator==(const BitVectorSet&) const = default;

 private:
  std::vector<BitVec> vectors_;
  std::size_t width_ = 0;
};

/// C3XOR instance: n = 2^s cells, each a width-w bit string or ABSENT.
class C3xorArray {
 public:
  C3xorArray() = default;
  C3xorArray(std::vector<std::optional<BitVec>> entries, std::size_t value_width);

  std::span<const std::optional<BitVec>> entries() const noexcept { return entries_; }
  const std::optional<BitVec>& operator[](std::size_t i) const { return entries_.at(i); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t value_width() const noexcept { return value_width_; }
  /// lg n.
  std::size_t index_bits() const noexcept { return ceil_log2(entries_.size()); }
  std::size_t present_count() const noexcept;

  bool operator==(const C3xorArray&) const = default;

 private:
  std::vector<std::optional<BitVec>> entries_;
  std::size_t value_width_ = 0;
};

/// 6SUM instance over Z₃ᵗ; elements may repeat.
class Z3VectorSet {
 public:
  Z3VectorSet() = default;
  Z3VectorSet(std::vector<Z3Vec> elements, std::size_t length);

  std::span<const Z3Vec> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t length() const noexcept { return length_; }

  bool operator==(const Z3VectorSet&) const = default;

 private:
  std::vector<Z3Vec> elements_;
  std::size_t length_ = 0;
};

// ---------------------------------------------------------------------------
// Graphs

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  bool operator==(const Edge&) const = default;
};

/// Undirected simple graph with dense 0-based node ids.
///
/// Node ids follow the ascending order of the original labels. The edge list
/// keeps first-seen order and orientation so that re-serialization is stable.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.at(v); }
  std::size_t degree(NodeId v) const { return adjacency_.at(v).size(); }
  bool has_edge(NodeId u, NodeId v) const;

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Label> labels() const noexcept { return labels_; }
  Label label(NodeId v) const { return labels_.at(v); }
  std::optional<NodeId> node_of(Label label) const;

  bool operator==(const Graph& other) const {
    return labels_ == other.labels_ && edges_ == other.edges_;
  }

 private:
  friend struct GraphBuilder;

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<Label> labels_;
};

struct NormalizeReport {
  Graph graph;
  std::size_t self_loops_removed = 0;
  std::size_t duplicates_removed = 0;
};

/// Builds a simple graph from labelled node pairs: drops self-loops and
/// duplicate edges (counted, not fatal), relabels nodes densely by ascending
/// label, and sorts adjacency. Nodes only seen in self-loops disappear.
NormalizeReport normalize_graph_report(std::span<const std::pair<Label, Label>> edges);
Graph normalize_graph(std::span<const std::pair<Label, Label>> edges);

/// The labelled edge list of g, in stored order.
std::vector<std::pair<Label, Label>> labelled_edges(const Graph& g);

/// Sub-graph on the given edges (ids of g); labels of the result are ids of g.
Graph edge_subgraph(const Graph& g, std::span<const Edge> edges);

struct NodeRange {
  Label begin = 0;
  Label end = 0;
  bool contains(Label x) const noexcept { return x >= begin && x < end; }
  bool operator==(const NodeRange&) const = default;
};

/// Graph whose node labels fall in three disjoint label ranges, with every
/// edge joining two different ranges.
struct TripartiteGraph {
  Graph graph;
  std::array<NodeRange, 3> parts;

  /// Part index (0..2) of node v, by its label.
  int part_of(NodeId v) const;
  /// Throws InvariantViolation if some edge stays inside a part.
  void validate() const;
};

/// Three distinct nodes, stored sorted ascending.
struct Triangle {
  std::array<NodeId, 3> nodes{};
  auto operator<=>(const Triangle&) const = default;
};

Triangle make_triangle(NodeId a, NodeId b, NodeId c);
bool is_triangle(const Graph& g, const Triangle& t);

}  // namespace triweb
