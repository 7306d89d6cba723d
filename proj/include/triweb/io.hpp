#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "triweb/core.hpp"

namespace triweb {

enum class Format { Edges, Ints, HexVecs, Z3Vecs, C3xor };

using Instance = std::variant<Graph, IntegerSet, BitVectorSet, C3xorArray, Z3VectorSet>;

/// "edges", "ints", "hexvecs", "z3vecs" or "c3xor".
Format parse_format(std::string_view name);
std::string_view format_name(Format f);
Format format_of(const Instance& instance);

// Graphs: header "n m", then one "u v" line per edge (original labels).
void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);

// Integer sets: one decimal per line. The magnitude bound is n^exponent.
void write_integer_set(std::ostream& out, const IntegerSet& s);
IntegerSet read_integer_set(std::istream& in, unsigned exponent = kDefaultMagnitudeExponent);
/// Same text format without the set invariants (for C3SUM arrays).
std::vector<std::int64_t> read_integer_array(std::istream& in);
void write_integer_array(std::ostream& out, std::span<const std::int64_t> values);

// Bit-vector sets: header "n l", then ceil(l/4) hex digits per line.
void write_bitvector_set(std::ostream& out, const BitVectorSet& s);
BitVectorSet read_bitvector_set(std::istream& in);

// Z3 sets: header "n t", then t base-3 digits per line.
void write_z3_set(std::ostream& out, const Z3VectorSet& s);
Z3VectorSet read_z3_set(std::istream& in);

// C3XOR arrays: header "n w", then "index hex" or "index -" for every index.
void write_c3xor(std::ostream& out, const C3xorArray& a);
C3xorArray read_c3xor(std::istream& in);

void write_instance(std::ostream& out, const Instance& instance);
Instance read_instance(std::istream& in, Format format);

void write_instance(const Instance& instance, const std::filesystem::path& path);
Instance read_instance(const std::filesystem::path& path, Format format);

}  // namespace triweb
