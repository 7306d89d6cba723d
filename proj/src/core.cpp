#include "triweb/core.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>

#include "triweb/errors.hpp"

namespace triweb {

std::size_t ceil_log2(std::size_t n) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// ---------------------------------------------------------------------------

IntegerSet::IntegerSet(std::vector<std::int64_t> values, std::int64_t magnitude_bound)
    : values_(std::move(values)), magnitude_bound_(magnitude_bound) {
  if (magnitude_bound_ < 1) throw InvariantViolation("magnitude bound must be positive");
  std::unordered_set<std::int64_t> seen;
  for (auto v : values_) {
    if (v > magnitude_bound_ || v < -magnitude_bound_) {
      throw InvariantViolation("value " + std::to_string(v) + " exceeds magnitude bound " +
                               std::to_string(magnitude_bound_));
    }
    if (!seen.insert(v).second) throw InvariantViolation("duplicate value " + std::to_string(v));
  }
}

std::int64_t IntegerSet::default_bound(std::size_t n, unsigned exponent) {
  std::int64_t bound = 1;
  for (unsigned e = 0; e < exponent; ++e) {
    if (n != 0 && bound > std::numeric_limits<std::int64_t>::max() / static_cast<std::int64_t>(n)) {
      throw std::overflow_error("magnitude bound overflows 64 bits");
    }
    bound *= static_cast<std::int64_t>(n);
  }
  return std::max<std::int64_t>(bound, 1);
}

BitVectorSet::BitVectorSet(std::vector<BitVec> vectors, std::size_t width)
    : vectors_(std::move(vectors)), width_(width) {
  std::unordered_set<BitVec, BitVecHash> seen;
  for (const auto& v : vectors_) {
    if (v.width() != width_) {
      throw InvariantViolation("vector of width " + std::to_string(v.width()) + " in a set of width " +
                               std::to_string(width_));
    }
    if (!seen.insert(v).second) throw InvariantViolation("duplicate vector " + v.to_hex());
  }
}

C3xorArray::C3xorArray(std::vector<std::optional<BitVec>> entries, std::size_t value_width)
    : entries_(std::move(entries)), value_width_(value_width) {
  if (!is_power_of_two(entries_.size())) {
    throw InvariantViolation("C3XOR array size " + std::to_string(entries_.size()) +
                             " is not a power of two");
  }
  for (const auto& e : entries_) {
    if (e && e->width() != value_width_) {
      throw InvariantViolation("C3XOR entry of width " + std::to_string(e->width()) +
                               ", expected " + std::to_string(value_width_));
    }
  }
}

std::size_t C3xorArray::present_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_value(); }));
}

Z3VectorSet::Z3VectorSet(std::vector<Z3Vec> elements, std::size_t length)
    : elements_(std::move(elements)), length_(length) {
  for (const auto& e : elements_) {
    if (e.length() != length_) {
      throw InvariantViolation("Z3 vector of length " + std::to_string(e.length()) +
                               ", expected " + std::to_string(length_));
    }
  }
}

// ---------------------------------------------------------------------------

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= adjacency_.size() || v >= adjacency_.size()) return false;
  const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
  const NodeId target = adjacency_[u].size() <= adjacency_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), target);
}

std::optional<NodeId> Graph::node_of(Label label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<NodeId>(it - labels_.begin());
}

struct GraphBuilder {
  static NormalizeReport build(std::span<const std::pair<Label, Label>> edges) {
    NormalizeReport report;
    std::vector<Label> labels;
    labels.reserve(edges.size() * 2);
    for (auto [a, b] : edges) {
      if (a == b) continue;
      labels.push_back(a);
      labels.push_back(b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.size() > std::numeric_limits<NodeId>::max()) throw std::length_error("too many nodes");

    Graph& g = report.graph;
    g.labels_ = std::move(labels);
    g.adjacency_.assign(g.labels_.size(), {});
    auto id_of = [&g](Label x) {
      return static_cast<NodeId>(std::lower_bound(g.labels_.begin(), g.labels_.end(), x) -
                                 g.labels_.begin());
    };

    std::vector<std::pair<std::uint64_t, std::size_t>> keyed;  // (undirected key, position)
    keyed.reserve(edges.size());
    std::vector<Edge> mapped;
    mapped.reserve(edges.size());
    for (auto [a, b] : edges) {
      if (a == b) {
        ++report.self_loops_removed;
        continue;
      }
      const NodeId u = id_of(a), v = id_of(b);
      const std::uint64_t key = (std::uint64_t{std::min(u, v)} << 32) | std::max(u, v);
      keyed.emplace_back(key, mapped.size());
      mapped.push_back({u, v});
    }
    // Keep the first occurrence of each undirected edge.
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<char> keep(mapped.size(), 0);
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      if (i > 0 && keyed[i].first == keyed[i - 1].first) {
        ++report.duplicates_removed;
      } else {
        keep[keyed[i].second] = 1;
      }
    }
    std::vector<std::size_t> degree(g.labels_.size(), 0);
    for (std::size_t i = 0; i < mapped.size(); ++i) {
      if (!keep[i]) continue;
      ++degree[mapped[i].u];
      ++degree[mapped[i].v];
    }
    for (std::size_t v = 0; v < degree.size(); ++v) g.adjacency_[v].reserve(degree[v]);
    g.edges_.reserve(mapped.size() - report.duplicates_removed);
    for (std::size_t i = 0; i < mapped.size(); ++i) {
      if (!keep[i]) continue;
      g.edges_.push_back(mapped[i]);
      g.adjacency_[mapped[i].u].push_back(mapped[i].v);
      g.adjacency_[mapped[i].v].push_back(mapped[i].u);
    }
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
    return report;
  }
};

NormalizeReport normalize_graph_report(std::span<const std::pair<Label, Label>> edges) {
  return GraphBuilder::build(edges);
}

Graph normalize_graph(std::span<const std::pair<Label, Label>> edges) {
  return GraphBuilder::build(edges).graph;
}

std::vector<std::pair<Label, Label>> labelled_edges(const Graph& g) {
  std::vector<std::pair<Label, Label>> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) out.emplace_back(g.label(e.u), g.label(e.v));
  return out;
}

Graph edge_subgraph(const Graph& g, std::span<const Edge> edges) {
  std::vector<std::pair<Label, Label>> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= g.node_count() || e.v >= g.node_count()) throw std::out_of_range("edge outside graph");
    pairs.emplace_back(static_cast<Label>(e.u), static_cast<Label>(e.v));
  }
  return normalize_graph(pairs);
}

int TripartiteGraph::part_of(NodeId v) const {
  const Label l = graph.label(v);
  for (int p = 0; p < 3; ++p)
    if (parts[p].contains(l)) return p;
  throw InvariantViolation("node label " + std::to_string(l) + " outside all parts");
}

void TripartiteGraph::validate() const {
  for (int p = 0; p < 3; ++p) {
    for (int q = p + 1; q < 3; ++q) {
      if (parts[p].begin < parts[q].end && parts[q].begin < parts[p].end) {
        throw InvariantViolation("tripartite parts overlap");
      }
    }
  }
  for (const auto& e : graph.edges()) {
    if (part_of(e.u) == part_of(e.v)) {
      throw InvariantViolation("edge inside a single part of a tripartite graph");
    }
  }
}

Triangle make_triangle(NodeId a, NodeId b, NodeId c) {
  if (a == b || b == c || a == c) throw std::invalid_argument("triangle nodes must be distinct");
  Triangle t{{a, b, c}};
  std::sort(t.nodes.begin(), t.nodes.end());
  return t;
}

bool is_triangle(const Graph& g, const Triangle& t) {
  const auto [a, b, c] = t.nodes;
  if (a == b || b == c || a == c) return false;
  return g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
}

}  // namespace triweb
