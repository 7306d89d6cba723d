#include "triweb/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "triweb/errors.hpp"

namespace triweb {

namespace {

/// Reads non-blank lines and remembers the 1-based number of the last one.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }

  std::string require(const char* what) {
    std::string line;
    if (!next(line)) throw ParseError(number_ + 1, std::string("unexpected end of input, expected ") + what);
    return line;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view field, std::size_t line) {
  Int value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && field.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "invalid integer '" + std::string(field) + "'");
  return value;
}

std::pair<std::size_t, std::size_t> read_header(LineReader& reader, const char* what) {
  const std::string line = reader.require(what);
  const auto fields = split_fields(line);
  if (fields.size() != 2) throw ParseError(reader.number(), std::string("expected header '") + what + "'");
  return {parse_int<std::size_t>(fields[0], reader.number()), parse_int<std::size_t>(fields[1], reader.number())};
}

void expect_end(LineReader& reader) {
  std::string line;
  if (reader.next(line)) throw ParseError(reader.number(), "unexpected trailing line");
}

template <class F>
auto with_line(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "edges") return Format::Edges;
  if (name == "ints") return Format::Ints;
  if (name == "hexvecs") return Format::HexVecs;
  if (name == "z3vecs") return Format::Z3Vecs;
  if (name == "c3xor") return Format::C3xor;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

std::string_view format_name(Format f) {
  switch (f) {
    case Format::Edges:
      return "edges";
    case Format::Ints:
      return "ints";
    case Format::HexVecs:
      return "hexvecs";
    case Format::Z3Vecs:
      return "z3vecs";
    case Format::C3xor:
      return "c3xor";
  }
  return "?";
}

Format format_of(const Instance& instance) {
  static constexpr Format kByIndex[] = {Format::Edges, Format::Ints, Format::HexVecs, Format::C3xor,
                                        Format::Z3Vecs};
  return kByIndex[instance.index()];
}

// ---------------------------------------------------------------------------

void write_graph(std::ostream& out, const Graph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

Graph read_graph(std::istream& in) {
  LineReader reader(in);
  const auto [n, m] = read_header(reader, "n m");
  std::vector<std::pair<Label, Label>> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::string line = reader.require("an edge line");
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw ParseError(reader.number(), "expected 'u v'");
    edges.emplace_back(parse_int<Label>(fields[0], reader.number()), parse_int<Label>(fields[1], reader.number()));
  }
  expect_end(reader);
  Graph g = normalize_graph(edges);
  if (g.node_count() > n) {
    throw InvariantViolation("edge list uses " + std::to_string(g.node_count()) + " nodes, header declares " +
                             std::to_string(n));
  }
  return g;
}

void write_integer_set(std::ostream& out, const IntegerSet& s) { write_integer_array(out, s.values()); }

void write_integer_array(std::ostream& out, std::span<const std::int64_t> values) {
  for (auto v : values) out << v << '\n';
}

std::vector<std::int64_t> read_integer_array(std::istream& in) {
  LineReader reader(in);
  std::vector<std::int64_t> values;
  std::string line;
  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.size() != 1) throw ParseError(reader.number(), "expected one integer per line");
    values.push_back(parse_int<std::int64_t>(fields[0], reader.number()));
  }
  return values;
}

IntegerSet read_integer_set(std::istream& in, unsigned exponent) {
  auto values = read_integer_array(in);
  const auto bound = IntegerSet::default_bound(values.size(), exponent);
  return IntegerSet(std::move(values), bound);
}

void write_bitvector_set(std::ostream& out, const BitVectorSet& s) {
  out << s.size() << ' ' << s.width() << '\n';
  for (const auto& v : s.vectors()) out << v.to_hex() << '\n';
}

BitVectorSet read_bitvector_set(std::istream& in) {
  LineReader reader(in);
  const auto [n, width] = read_header(reader, "n l");
  std::vector<BitVec> vectors;
  vectors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string line = reader.require("a hex vector");
    const auto fields = split_fields(line);
    if (fields.size() != 1) throw ParseError(reader.number(), "expected one hex string");
    if (fields[0].size() != (width + 3) / 4) throw ParseError(reader.number(), "hex string of wrong length");
    vectors.push_back(with_line(reader.number(), [&] { return BitVec::from_hex(fields[0], width); }));
  }
  expect_end(reader);
  return BitVectorSet(std::move(vectors), width);
}

void write_z3_set(std::ostream& out, const Z3VectorSet& s) {
  out << s.size() << ' ' << s.length() << '\n';
  for (const auto& v : s.elements()) out << v.to_digits() << '\n';
}

Z3VectorSet read_z3_set(std::istream& in) {
  LineReader reader(in);
  const auto [n, t] = read_header(reader, "n t");
  std::vector<Z3Vec> elements;
  elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string line = reader.require("a base-3 digit string");
    const auto fields = split_fields(line);
    if (fields.size() != 1 || fields[0].size() != t) throw ParseError(reader.number(), "expected " + std::to_string(t) + " base-3 digits");
    elements.push_back(with_line(reader.number(), [&] { return Z3Vec::from_digits(fields[0]); }));
  }
  expect_end(reader);
  return Z3VectorSet(std::move(elements), t);
}

void write_c3xor(std::ostream& out, const C3xorArray& a) {
  out << a.size() << ' ' << a.value_width() << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << i << ' ';
    if (a[i]) {
      out << a[i]->to_hex();
    } else {
      out << '-';
    }
    out << '\n';
  }
}

C3xorArray read_c3xor(std::istream& in) {
  LineReader reader(in);
  const auto [n, width] = read_header(reader, "n w");
  std::vector<std::optional<BitVec>> entries(n);
  std::vector<char> seen(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::string line = reader.require("an array cell");
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw ParseError(reader.number(), "expected 'index hex' or 'index -'");
    const auto i = parse_int<std::size_t>(fields[0], reader.number());
    if (i >= n) throw ParseError(reader.number(), "index " + std::to_string(i) + " out of range");
    if (seen[i]) throw ParseError(reader.number(), "index " + std::to_string(i) + " repeated");
    seen[i] = 1;
    if (fields[1] != "-") {
      if (fields[1].size() != (width + 3) / 4) throw ParseError(reader.number(), "hex string of wrong length");
      entries[i] = with_line(reader.number(), [&] { return BitVec::from_hex(fields[1], width); });
    }
  }
  expect_end(reader);
  return C3xorArray(std::move(entries), width);
}

void write_instance(std::ostream& out, const Instance& instance) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Graph>) write_graph(out, x);
        if constexpr (std::is_same_v<T, IntegerSet>) write_integer_set(out, x);
        if constexpr (std::is_same_v<T, BitVectorSet>) write_bitvector_set(out, x);
        if constexpr (std::is_same_v<T, C3xorArray>) write_c3xor(out, x);
        if constexpr (std::is_same_v<T, Z3VectorSet>) write_z3_set(out, x);
      },
      instance);
}

Instance read_instance(std::istream& in, Format format) {
  switch (format) {
    case Format::Edges:
      return read_graph(in);
    case Format::Ints:
      return read_integer_set(in);
    case Format::HexVecs:
      return read_bitvector_set(in);
    case Format::Z3Vecs:
      return read_z3_set(in);
    case Format::C3xor:
      return read_c3xor(in);
  }
  throw std::invalid_argument("unknown format");
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_instance(out, instance);
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

Instance read_instance(const std::filesystem::path& path, Format format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_instance(in, format);
}

}  // namespace triweb
