#include "triweb/detect_reduce.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "triweb/errors.hpp"
#include "triweb/prand.hpp"
#include "triweb/generate.hpp"
#include "triweb/rng.hpp"
#include "triweb/solvers.hpp"

namespace triweb {

Xor3Solver default_xor3_solver() {
  return [](std::span<const BitVec> v) { return solve_3xor_quadratic(v); };
}

Sum3Solver default_sum3_solver() {
  return [](std::span<const BigInt> v) { return solve_3sum_hashed(v); };
}

Sum3Solver narrow_to_int64(std::function<std::optional<Witness3>(std::span<const std::int64_t>)> solver) {
  return [solver = std::move(solver)](std::span<const BigInt> values) {
    std::vector<std::int64_t> narrow;
    narrow.reserve(values.size());
    for (const auto& v : values) {
      if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
        throw LabelOverflow("label " + v.str() + " does not fit in 64 bits");
      }
      narrow.push_back(static_cast<std::int64_t>(v));
    }
    return solver(narrow);
  };
}

EdgeLabeling<BitVec> xor_labeling(const Graph& g, std::vector<BitVec> node_labels) {
  if (node_labels.size() != g.node_count()) throw std::invalid_argument("one label per node required");
  EdgeLabeling<BitVec> out;
  out.edge_values.reserve(g.edge_count());
  out.back_map.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    out.edge_values.push_back(node_labels[e.u] ^ node_labels[e.v]);
    out.back_map.push_back(e);
  }
  out.node_labels = std::move(node_labels);
  return out;
}

EdgeLabeling<BigInt> sum_labeling(const Graph& g, std::vector<BigInt> node_labels) {
  if (node_labels.size() != g.node_count()) throw std::invalid_argument("one label per node required");
  EdgeLabeling<BigInt> out;
  out.edge_values.reserve(2 * g.edge_count());
  out.back_map.reserve(2 * g.edge_count());
  for (const auto& e : g.edges()) {
    out.edge_values.push_back(node_labels[e.u] - node_labels[e.v]);
    out.back_map.push_back({e.u, e.v});
    out.edge_values.push_back(node_labels[e.v] - node_labels[e.u]);
    out.back_map.push_back({e.v, e.u});
  }
  out.node_labels = std::move(node_labels);
  return out;
}

std::optional<Triangle> decode_triangle(const Graph& g, std::span<const Edge> back_map, const Witness3& w) {
  std::array<NodeId, 6> ends{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (w.idx[k] >= back_map.size()) return std::nullopt;
    ends[2 * k] = back_map[w.idx[k]].u;
    ends[2 * k + 1] = back_map[w.idx[k]].v;
  }
  std::sort(ends.begin(), ends.end());
  // Three nodes, each an endpoint of exactly two of the edges.
  if (!(ends[0] == ends[1] && ends[2] == ends[3] && ends[4] == ends[5])) return std::nullopt;
  if (ends[1] == ends[2] || ends[3] == ends[4]) return std::nullopt;
  const Triangle t = make_triangle(ends[0], ends[2], ends[4]);
  if (!is_triangle(g, t)) return std::nullopt;
  return t;
}

std::size_t randomized_label_bits(std::size_t edge_count) {
  return std::max<std::size_t>(3, 3 * ceil_log2(edge_count));
}

namespace {

BigInt random_integer(Rng& rng, std::size_t bits) {
  BigInt x = 0;
  for (std::size_t b = 0; b < bits; b += 32) {
    const std::size_t take = std::min<std::size_t>(32, bits - b);
    x <<= take;
    x += static_cast<std::uint32_t>(rng() & ((std::uint64_t{1} << take) - 1));
  }
  return x;
}

std::vector<BitVec> random_xor_labels(const Graph& g, std::uint64_t seed, std::size_t round) {
  auto rng = make_rng(seed, round);
  const std::size_t width = randomized_label_bits(g.edge_count());
  std::vector<BitVec> labels;
  labels.reserve(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) labels.push_back(random_bitvec(rng, width));
  return labels;
}

std::vector<BigInt> random_sum_labels(const Graph& g, std::uint64_t seed, std::size_t round) {
  auto rng = make_rng(seed, round);
  const std::size_t width = randomized_label_bits(g.edge_count());
  std::vector<BigInt> labels;
  labels.reserve(g.node_count());
  for (std::size_t v = 0; v < g.node_count(); ++v) labels.push_back(random_integer(rng, width));
  return labels;
}

DesignFamily detection_design(const Graph& g, const DetectOptions& options) {
  auto design = build_design(std::max<std::size_t>(2, g.node_count()), options.design_c, DesignStrategy::Polynomial,
                             options.seed);
  if (5 * design.intersection_bound >= design.set_size) {
    throw std::invalid_argument("design intersection ratio must be below 1/5 for triangle detection");
  }
  return design;
}

bool too_small(const Graph& g) { return g.edge_count() < 3 || g.node_count() < 3; }

template <class V, class Labeler, class LabelsFor, class Solver>
DetectResult detect_impl(const Graph& g, const Solver& solver, const DetectOptions& options, Labeler labeler,
                         LabelsFor labels_for) {
  DetectResult result;
  if (too_small(g)) return result;
  if (options.mode == LabelMode::Deterministic) {
    const auto labeling = labeler(g, labels_for(0));
    result.rounds = 1;
    const auto w = solver(std::span<const V>(labeling.edge_values));
    if (!w) return result;
    const auto t = decode_triangle(g, labeling.back_map, *w);
    if (!t) throw std::logic_error("deterministic labels produced a witness that is not a triangle");
    result.has_triangle = true;
    result.triangle = t;
    return result;
  }
  if (options.confidence_rounds == 0) throw std::invalid_argument("confidence_rounds must be positive");
  for (std::size_t round = 0; round < options.confidence_rounds; ++round) {
    const auto labeling = labeler(g, labels_for(round));
    result.rounds = round + 1;
    const auto w = solver(std::span<const V>(labeling.edge_values));
    if (!w) return result;
    if (auto t = decode_triangle(g, labeling.back_map, *w)) {
      result.has_triangle = true;
      result.triangle = t;
      return result;
    }
    ++result.spurious;
  }
  result.has_triangle = true;
  result.certified = false;
  return result;
}

}  // namespace

DetectResult detect_via_3xor(const Graph& g, const Xor3Solver& solver, const DetectOptions& options) {
  if (options.mode == LabelMode::Deterministic) {
    return detect_impl<BitVec>(g, solver, options, xor_labeling, [&](std::size_t) {
      const auto d = detection_design(g, options);
      std::vector<BitVec> labels;
      for (std::size_t v = 0; v < g.node_count(); ++v) labels.push_back(design_label_binary(d, v));
      return labels;
    });
  }
  return detect_impl<BitVec>(g, solver, options, xor_labeling,
                             [&](std::size_t round) { return random_xor_labels(g, options.seed, round); });
}

DetectResult detect_via_3sum(const Graph& g, const Sum3Solver& solver, const DetectOptions& options) {
  if (options.mode == LabelMode::Deterministic) {
    return detect_impl<BigInt>(g, solver, options, sum_labeling, [&](std::size_t) {
      const auto d = detection_design(g, options);
      std::vector<BigInt> labels;
      for (std::size_t v = 0; v < g.node_count(); ++v) labels.push_back(design_label_decimal(d, v));
      return labels;
    });
  }
  return detect_impl<BigInt>(g, solver, options, sum_labeling,
                             [&](std::size_t round) { return random_sum_labels(g, options.seed, round); });
}

namespace {

template <class Decider, class Build>
DetectResult decide_rounds(const Graph& g, const DetectOptions& options, const Decider& decider, Build build) {
  if (options.mode != LabelMode::Randomized) {
    throw std::invalid_argument("decision-only detection uses randomized labels");
  }
  if (options.confidence_rounds == 0) throw std::invalid_argument("confidence_rounds must be positive");
  DetectResult result;
  if (too_small(g)) return result;
  for (std::size_t round = 0; round < options.confidence_rounds; ++round) {
    result.rounds = round + 1;
    const auto labeling = build(round);
    if (!decider(std::span(labeling.edge_values))) return result;
  }
  result.has_triangle = true;
  result.certified = false;
  return result;
}

}  // namespace

DetectResult detect_via_3xor_decision(const Graph& g, const Xor3Decider& decider, const DetectOptions& options) {
  return decide_rounds(g, options, decider, [&](std::size_t round) {
    return xor_labeling(g, random_xor_labels(g, options.seed, round));
  });
}

DetectResult detect_via_3sum_decision(const Graph& g, const Sum3Decider& decider, const DetectOptions& options) {
  return decide_rounds(g, options, decider, [&](std::size_t round) {
    return sum_labeling(g, random_sum_labels(g, options.seed, round));
  });
}

}  // namespace triweb
