#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hgsparse/hypergraph.hpp"

namespace hgsparse {

// Text format. Header `uhg <n> <m>` or `dhg <n> <m>`, then m body lines:
//   undirected:  <w> <v1> ... <vk>
//   directed:    <w> <t1> ... <tj> > <h1> ... <hk>
// `#` starts a comment, vertex ids are 0-based decimal, weights are decimal
// reals. Serialization is canonical: sorted vertex lists, single spaces, and
// weights printed with 17 significant digits so round-trips are bit-faithful.

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_number, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_number) + ": " + message),
        line(line_number) {}
};

using AnyHypergraph = std::variant<UndirectedHypergraph, DirectedHypergraph>;

namespace detail {

inline std::vector<std::string> content_tokens(const std::string& raw) {
  const auto hash = raw.find('#');
  std::istringstream stream(hash == std::string::npos ? raw : raw.substr(0, hash));
  std::vector<std::string> tokens;
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

inline int parse_int(const std::string& token, int line, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("bad ") + what + " token '" + token + "'");
  }
  return value;
}

inline double parse_weight(const std::string& token, int line) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw ParseError(line, "bad weight token '" + token + "'");
  }
  if (consumed != token.size()) throw ParseError(line, "bad weight token '" + token + "'");
  if (!(value >= 0.0)) throw ParseError(line, "weight must be nonnegative");
  return value;
}

inline int parse_vertex(const std::string& token, int line, int n) {
  const int v = parse_int(token, line, "vertex");
  if (v < 0 || v >= n) {
    throw ParseError(line, "vertex " + std::to_string(v) + " out of range");
  }
  return v;
}

inline std::string format_weight(double w) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", w);
  return buffer;
}

}  // namespace detail

inline AnyHypergraph read_hypergraph(std::istream& in) {
  std::string raw;
  int line = 0;

  auto next_tokens = [&](std::vector<std::string>& tokens) {
    while (std::getline(in, raw)) {
      ++line;
      tokens = detail::content_tokens(raw);
      if (!tokens.empty()) return true;
    }
    return false;
  };

  std::vector<std::string> tokens;
  if (!next_tokens(tokens)) throw ParseError(line + 1, "missing header");
  if (tokens.size() != 3 || (tokens[0] != "uhg" && tokens[0] != "dhg")) {
    throw ParseError(line, "expected header 'uhg <n> <m>' or 'dhg <n> <m>'");
  }
  const bool directed = tokens[0] == "dhg";
  const int n = detail::parse_int(tokens[1], line, "vertex count");
  const int m = detail::parse_int(tokens[2], line, "edge count");
  if (n < 0 || m < 0) throw ParseError(line, "vertex and edge counts must be nonnegative");

  std::vector<Hyperedge> edges;
  std::vector<Hyperarc> arcs;
  for (int body = 0; body < m; ++body) {
    if (!next_tokens(tokens)) {
      throw ParseError(line + 1, "expected " + std::to_string(m) + " edge lines, got " +
                                     std::to_string(body));
    }
    const double w = detail::parse_weight(tokens[0], line);
    if (directed) {
      Hyperarc arc;
      arc.weight = w;
      bool seen_sep = false;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == ">") {
          if (seen_sep) throw ParseError(line, "multiple '>' separators");
          seen_sep = true;
          continue;
        }
        (seen_sep ? arc.head : arc.tail)
            .push_back(detail::parse_vertex(tokens[i], line, n));
      }
      if (!seen_sep) throw ParseError(line, "missing '>' separator in arc line");
      if (arc.tail.empty() || arc.head.empty()) {
        throw ParseError(line, "tail and head must be nonempty");
      }
      arcs.push_back(std::move(arc));
    } else {
      Hyperedge edge;
      edge.weight = w;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        edge.vertices.push_back(detail::parse_vertex(tokens[i], line, n));
      }
      if (edge.vertices.empty()) throw ParseError(line, "hyperedge has no vertices");
      edges.push_back(std::move(edge));
    }
  }
  if (next_tokens(tokens)) throw ParseError(line, "unexpected content after edge lines");

  if (directed) return DirectedHypergraph(n, std::move(arcs));
  return UndirectedHypergraph(n, std::move(edges));
}

inline void write_hypergraph(std::ostream& out, const UndirectedHypergraph& g) {
  out << "uhg " << g.vertex_count() << ' ' << g.edges().size() << '\n';
  for (const Hyperedge& e : g.edges()) {
    out << detail::format_weight(e.weight);
    for (int v : e.vertices) out << ' ' << v;
    out << '\n';
  }
}

inline void write_hypergraph(std::ostream& out, const DirectedHypergraph& g) {
  out << "dhg " << g.vertex_count() << ' ' << g.arcs().size() << '\n';
  for (const Hyperarc& a : g.arcs()) {
    out << detail::format_weight(a.weight);
    for (int v : a.tail) out << ' ' << v;
    out << " >";
    for (int v : a.head) out << ' ' << v;
    out << '\n';
  }
}

// Label files: one `<vertex> <value>` pair per line, comments allowed.
inline Labeling read_labels(std::istream& in, int n) {
  Labeling labels;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::vector<std::string> tokens = detail::content_tokens(raw);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(line, "expected '<vertex> <value>'");
    const int v = detail::parse_vertex(tokens[0], line, n);
    if (labels.count(v)) {
      throw ParseError(line, "duplicate label for vertex " + std::to_string(v));
    }
    std::size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(tokens[1], &consumed);
    } catch (const std::exception&) {
      throw ParseError(line, "bad value token '" + tokens[1] + "'");
    }
    if (consumed != tokens[1].size()) {
      throw ParseError(line, "bad value token '" + tokens[1] + "'");
    }
    labels[v] = value;
  }
  return labels;
}

inline void write_labels(std::ostream& out, const Labeling& labels) {
  for (const auto& [v, value] : labels) {
    out << v << ' ' << detail::format_weight(value) << '\n';
  }
}

}  // namespace hgsparse
