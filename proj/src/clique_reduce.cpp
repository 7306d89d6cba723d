#include "triweb/clique_reduce.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "triweb/solvers.hpp"

namespace triweb {

Sum6Solver default_sum6_solver() {
  return [](std::span<const Z3Vec> elements) { return solve_6sum_z3(elements); };
}

std::vector<Z3Vec> clique_edge_sums(const Graph& g, const DesignFamily& design) {
  if (design.m < g.node_count()) {
    throw std::invalid_argument("design has " + std::to_string(design.m) + " sets for " +
                                std::to_string(g.node_count()) + " nodes");
  }
  std::vector<Z3Vec> labels;
  labels.reserve(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) labels.push_back(design_label_ternary(design, v));
  std::vector<Z3Vec> sums;
  sums.reserve(g.edge_count());
  for (const auto& e : g.edges()) sums.push_back(labels[e.u] + labels[e.v]);
  return sums;
}

CliqueResult detect_4clique_via_6sum(const Graph& g, const DesignFamily& design, const Sum6Solver& solver) {
  if (!(design.intersection_ratio() < 1.0 / 11.0)) {
    throw std::invalid_argument("design intersection ratio must be below 1/11");
  }
  CliqueResult out;
  out.label_length = design.universe;
  if (g.node_count() < 4 || g.edge_count() < 6) return out;
  const auto sums = clique_edge_sums(g, design);
  out.elements = sums.size();
  const auto w = solver(sums);
  if (!w) return out;
  if (!is_6sum_witness(sums, *w)) throw std::logic_error("6SUM solver returned an invalid witness");

  // Each endpoint must occur exactly three times among the six edges.
  std::map<NodeId, int> multiplicity;
  for (auto idx : w->idx) {
    const auto& e = g.edges()[idx];
    ++multiplicity[e.u];
    ++multiplicity[e.v];
  }
  if (multiplicity.size() != 4) throw std::logic_error("6SUM witness does not span four nodes");
  std::array<NodeId, 4> nodes{};
  std::size_t k = 0;
  for (auto [v, count] : multiplicity) {
    if (count != 3) throw std::logic_error("6SUM witness node multiplicity is not 3");
    nodes[k++] = v;
  }
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b)
      if (!g.has_edge(nodes[a], nodes[b])) throw std::logic_error("decoded quadruple is not a 4-clique");
  out.has_clique = true;
  out.clique = nodes;
  return out;
}

CliqueResult detect_4clique_via_6sum(const Graph& g, const Sum6Solver& solver, double c, std::uint64_t seed) {
  const auto design =
      build_design(std::max<std::size_t>(2, g.node_count()), c, DesignStrategy::Polynomial, seed);
  return detect_4clique_via_6sum(g, design, solver);
}

}  // namespace triweb
