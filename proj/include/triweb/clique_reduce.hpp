#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "triweb/core.hpp"
#include "triweb/prand.hpp"

namespace triweb {

using Sum6Solver = std::function<std::optional<Witness6>(std::span<const Z3Vec>)>;

/// Meet-in-the-middle 6SUM with the default triple limit.
Sum6Solver default_sum6_solver();

inline constexpr double kCliqueDesignC = 23.0;

struct CliqueResult {
  bool has_clique = false;
  /// Sorted node ids.
  std::optional<std::array<NodeId, 4>> clique;
  /// Edges handed to the 6SUM solver.
  std::size_t elements = 0;
  std::size_t label_length = 0;
};

/// Y_(a,b) = x_a + x_b over Z₃ for every edge, one index per edge.
std::vector<Z3Vec> clique_edge_sums(const Graph& g, const DesignFamily& design);

/// Decides 4-clique with one 6SUM call. Node id a takes the ternary label of
/// design set a, so the design needs at least node_count sets and an
/// intersection ratio below 1/11. A witness that does not decode to a
/// verified 4-clique throws std::logic_error.
CliqueResult detect_4clique_via_6sum(const Graph& g, const DesignFamily& design, const Sum6Solver& solver);

/// Builds the polynomial design with the given c for the graph's node count.
CliqueResult detect_4clique_via_6sum(const Graph& g, const Sum6Solver& solver = default_sum6_solver(),
                                     double c = kCliqueDesignC, std::uint64_t seed = 0);

}  // namespace triweb
