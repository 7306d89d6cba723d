#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "triweb/core.hpp"
#include "triweb/detect_reduce.hpp"
#include "triweb/prand.hpp"

namespace triweb {

using C3xorSolver = std::function<std::optional<WitnessC3xor>(const C3xorArray&)>;
/// Lists up to cap distinct triangles of a graph.
using TriangleLister = std::function<std::vector<Triangle>(const Graph&, std::size_t cap)>;

C3xorSolver bruteforce_c3xor_solver();
TriangleLister baseline_lister();

// ---------------------------------------------------------------------------
// Length reduction

struct LengthReduction {
  /// h(v_i) for every input vector, same order; may contain repeats.
  std::vector<BitVec> hashed;
  XorHashKeys keys;
  bool identity = false;
};

/// Target width 3·ceil(lg n).
std::size_t reduced_length(std::size_t n);

/// Hashes every vector to reduced_length(n) bits; identity when the width is
/// already at most that.
LengthReduction reduce_length(const BitVectorSet& s, std::uint64_t seed);

struct LengthReducedSolve {
  std::optional<Witness3> witness;
  std::size_t rounds = 0;
  std::size_t spurious = 0;
};

/// Solves the hashed multiset and checks any witness against s, resampling
/// keys after a spurious one. After max_rounds the solver runs on s itself.
LengthReducedSolve solve_3xor_length_reduced(const BitVectorSet& s, const Xor3Solver& solver, std::uint64_t seed,
                                             std::size_t max_rounds = 20);

// ---------------------------------------------------------------------------
// 3XOR via C3XOR

struct Xor3ViaC3xorOptions {
  /// Buckets R = 2^floor((1 - alpha)·lg n).
  double alpha = 0.25;
  std::uint64_t seed = 0;
  /// Calls of the inner solver per array until one returns a witness.
  std::size_t amplification = 1;
  /// Declared error of one inner call, for the error budget.
  double inner_error = 0.0;
};

struct Xor3ViaC3xorResult {
  std::optional<Witness3> witness;
  std::size_t bucket_bits = 0;
  double overload_threshold = 0.0;
  /// Elements in buckets of load > threshold, checked directly.
  std::size_t overloaded_elements = 0;
  bool found_in_direct_check = false;
  std::size_t arrays_built = 0;
  std::size_t solver_calls = 0;
  /// Union bound on a missed solution: arrays · inner_error^amplification.
  double error_budget = 0.0;
};

Xor3ViaC3xorResult solve_3xor_via_c3xor(const BitVectorSet& s, const C3xorSolver& solver,
                                        const Xor3ViaC3xorOptions& options = {});

// ---------------------------------------------------------------------------
// C3XOR via 3XOR and C3SUM via 3SUM

/// 3XOR on {A[i]∘i : A[i] present}. A zero A[0] is reported as (0, 0) first,
/// since such degenerate pairs have no distinct-element counterpart.
std::optional<WitnessC3xor> solve_c3xor_via_3xor(const C3xorArray& a, const Xor3Solver& solver);

/// Pairs with A[i] + A[j] = A[i + j], i + j < n (i = j and 0 allowed).
bool is_c3sum_witness(std::span<const std::int64_t> a, std::size_t i, std::size_t j);
std::optional<std::pair<std::size_t, std::size_t>> solve_c3sum_bruteforce(std::span<const std::int64_t> a);

/// 3SUM on {e_i} ∪ {-e_i} with e_i = A[i]·2^(s+1) + i (a zero separator bit
/// above the s index bits); i = j pairs are checked directly. Entries must be
/// nonnegative.
std::optional<std::pair<std::size_t, std::size_t>> solve_c3sum_via_3sum(std::span<const std::int64_t> a,
                                                                        const Sum3Solver& solver);

// ---------------------------------------------------------------------------
// C3XOR via triangle listing

/// A extended with ABSENT cells to the next size 4^s.
C3xorArray pad_to_square(const C3xorArray& a);

struct CxorNode {
  /// 0: (a), 1: (b_h, x), 2: (b_l, y).
  int part = 0;
  std::size_t block = 0;
  std::size_t hash = 0;
};

/// Graph whose triangles are the pairs (a, b) with
/// h(A[a ⊕ (b_h∘0^s)]) ⊕ h(A[a ⊕ (0^s∘b_l)]) = h(A[b]), all three cells present.
struct CxorGraph {
  TripartiteGraph graph;
  XorHashKeys keys;
  /// Padded size n = 4^s and s.
  std::size_t size = 0;
  std::size_t half_bits = 0;

  std::size_t buckets() const { return std::size_t{1} << half_bits; }
  CxorNode annotate(Label label) const;
  /// (i, j) = (a ⊕ (b_h∘0^s), a ⊕ (0^s∘b_l)) of a triangle.
  std::pair<std::size_t, std::size_t> decode(const Triangle& t) const;
};

/// Keys mapping w bits to s = lg √n bits for the padded array.
XorHashKeys sample_cxor_keys(const C3xorArray& a, std::uint64_t seed);

/// a must already have size 4^s (see pad_to_square).
CxorGraph build_cxor_graph(const C3xorArray& a, const XorHashKeys& keys);

/// One line "label part block hash" per node.
void write_cxor_annotations(std::ostream& out, const CxorGraph& g);

struct StarPairCount {
  /// Pairs (a, b) with all three cells present satisfying the hash equation.
  std::size_t star_pairs = 0;
  std::size_t genuine = 0;
};

StarPairCount count_star_pairs(const C3xorArray& padded, const XorHashKeys& keys);

struct C3xorViaListingResult {
  std::optional<WitnessC3xor> witness;
  std::size_t rounds = 0;
  std::size_t triangles_examined = 0;
  /// Every round listed m triangles without a genuine pair: a probable no.
  bool exhausted = false;
};

C3xorViaListingResult solve_c3xor_via_listing(const C3xorArray& a, const TriangleLister& lister,
                                              std::size_t retries = 7, std::uint64_t seed = 0);

}  // namespace triweb
