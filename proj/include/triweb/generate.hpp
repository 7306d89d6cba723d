#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

#include "triweb/core.hpp"
#include "triweb/io.hpp"
#include "triweb/rng.hpp"

namespace triweb {

BitVec random_bitvec(Rng& rng, std::size_t width);
/// Digits uniform in {0, 1, 2}.
Z3Vec random_z3(Rng& rng, std::size_t length);

/// Random simple graph on labels 1..n with exactly m edges containing at
/// least `planted` triangles. Nodes left isolated are dropped by normalization.
/// Throws std::invalid_argument when the parameters are infeasible.
Graph gen_graph(std::size_t n, std::size_t m, std::size_t planted, std::uint64_t seed);

template <class Inst, class W>
struct Planted {
  Inst instance;
  std::optional<W> witness;
};

/// Values in [-n^exponent, n^exponent]. Unplanted instances are resampled
/// until the quadratic solver finds no solution.
Planted<IntegerSet, Witness3> gen_3sum(std::size_t n, bool plant, std::uint64_t seed,
                                       unsigned exponent = kDefaultMagnitudeExponent);

/// width 0 selects max(3, 3·ceil(lg n)).
Planted<BitVectorSet, Witness3> gen_3xor(std::size_t n, bool plant, std::uint64_t seed, std::size_t width = 0);

/// n must be a power of two; width 0 selects max(3, 3·lg n). Each cell is
/// ABSENT with probability absent_fraction (planted cells are always present).
Planted<C3xorArray, WitnessC3xor> gen_c3xor(std::size_t n, bool plant, std::uint64_t seed, std::size_t width = 0,
                                            double absent_fraction = 0.0);

/// length 0 selects ceil(6·log₃ n) + 2.
Planted<Z3VectorSet, Witness6> gen_6sum(std::size_t n, bool plant, std::uint64_t seed, std::size_t length = 0);

enum class InstanceKind { Sum3, Xor3, C3xor, Sum6 };

InstanceKind parse_instance_kind(std::string_view name);

using AnyWitness = std::variant<Witness3, WitnessC3xor, Witness6>;

struct GeneratedInstance {
  Instance instance;
  std::optional<AnyWitness> witness;
};

GeneratedInstance gen_planted_instance(InstanceKind kind, std::size_t n, bool plant, std::uint64_t seed);

}  // namespace triweb
