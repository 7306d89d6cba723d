#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "triweb/core.hpp"

namespace triweb {

/// 3XOR solver over an indexed multiset: three distinct positions or nothing.
using Xor3Solver = std::function<std::optional<Witness3>(std::span<const BitVec>)>;
/// 3SUM solver over an indexed multiset of integers.
using Sum3Solver = std::function<std::optional<Witness3>(std::span<const BigInt>)>;
/// Solvers that only answer yes or no.
using Xor3Decider = std::function<bool(std::span<const BitVec>)>;
using Sum3Decider = std::function<bool(std::span<const BigInt>)>;

Xor3Solver default_xor3_solver();
Sum3Solver default_sum3_solver();

/// Runs a machine-word 3SUM solver; throws LabelOverflow if a value does not
/// fit in 64 bits.
Sum3Solver narrow_to_int64(std::function<std::optional<Witness3>(std::span<const std::int64_t>)> solver);

/// Node labels X_a, the set elements Y and, for every element, the directed
/// edge (a, b) it came from.
template <class V>
struct EdgeLabeling {
  std::vector<V> node_labels;
  std::vector<V> edge_values;
  std::vector<Edge> back_map;
};

/// One element X_a ⊕ X_b per undirected edge.
EdgeLabeling<BitVec> xor_labeling(const Graph& g, std::vector<BitVec> node_labels);
/// Two elements X_a − X_b and X_b − X_a per undirected edge.
EdgeLabeling<BigInt> sum_labeling(const Graph& g, std::vector<BigInt> node_labels);

/// The triangle formed by the three witnessed edges, if they form one in g.
std::optional<Triangle> decode_triangle(const Graph& g, std::span<const Edge> back_map, const Witness3& w);

enum class LabelMode { Randomized, Deterministic };

struct DetectOptions {
  LabelMode mode = LabelMode::Deterministic;
  std::uint64_t seed = 0;
  /// Randomized mode: fresh labelings tried before giving up.
  std::size_t confidence_rounds = 20;
  /// Design parameter for deterministic labels; needs 2/c < 1/5.
  double design_c = 11.0;
};

struct DetectResult {
  bool has_triangle = false;
  std::optional<Triangle> triangle;
  /// Labelings tried.
  std::size_t rounds = 0;
  /// Witnesses that did not decode to a triangle.
  std::size_t spurious = 0;
  /// False only when every round was spurious or undecided and the answer is
  /// a probable yes without a verified triangle.
  bool certified = true;
};

DetectResult detect_via_3xor(const Graph& g, const Xor3Solver& solver, const DetectOptions& options = {});
DetectResult detect_via_3sum(const Graph& g, const Sum3Solver& solver, const DetectOptions& options = {});

/// Decision-only solvers with randomized labels. Errors are one-sided (a
/// triangle always produces a solution), so the answer is yes only if every
/// one of the confidence_rounds labelings is a yes; false-positive
/// probability is at most 2^-rounds.
DetectResult detect_via_3xor_decision(const Graph& g, const Xor3Decider& decider, const DetectOptions& options);
DetectResult detect_via_3sum_decision(const Graph& g, const Sum3Decider& decider, const DetectOptions& options);

/// Label bits used by the randomized mode: 3·ceil(lg m), at least 3.
std::size_t randomized_label_bits(std::size_t edge_count);

}  // namespace triweb
