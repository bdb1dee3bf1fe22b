#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/ordered_graph.hpp"
#include "hgsparse/solvers.hpp"

namespace hgsparse {

// Instance generators, all deterministic under their seed.

enum class GenKind {
  RandomUniform,  // m hyperedges, each a uniform r-subset (duplicates across edges allowed)
  RandomMixed,    // like RandomUniform with |e| drawn uniformly from [2, r]
  CompleteGraph,  // all C(n,2) pairs
  Appendix,       // shared-pair family: every {s,t} union X over r-subsets X of U
};

struct GenSpec {
  GenKind kind = GenKind::RandomUniform;
  int n = 0;     // vertex count (Appendix: size of U; two more vertices are added)
  int m = 0;     // edge count (random kinds)
  int r = 0;     // uniformity / maximum size; directed kinds: side size bound
  bool directed = false;
  bool unit_weights = true;
  double weight_min = 1.0, weight_max = 1.0;  // uniform weights when not unit
  std::uint64_t seed = 0;
};

namespace detail {

inline void check_gen_weights(const GenSpec& spec) {
  if (!spec.unit_weights && !(spec.weight_min > 0.0 && spec.weight_max >= spec.weight_min)) {
    throw std::invalid_argument("gen: need 0 < weight_min <= weight_max");
  }
}

inline double draw_weight(const GenSpec& spec, std::mt19937_64& rng) {
  if (spec.unit_weights) return 1.0;
  return std::uniform_real_distribution<double>(spec.weight_min, spec.weight_max)(rng);
}

inline std::vector<int> draw_subset(int n, int k, std::mt19937_64& rng) {
  // Floyd's algorithm; result sorted.
  std::vector<int> picked;
  picked.reserve(k);
  for (int j = n - k; j < n; ++j) {
    int v = std::uniform_int_distribution<int>(0, j)(rng);
    bool taken = false;
    for (int w : picked) taken |= (w == v);
    picked.push_back(taken ? j : v);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

}  // namespace detail

// All hyperedges {s, t} union X over the C(|U|, r) many r-subsets X of U,
// with s = 0, t = 1, U = {2, ..., n_u + 1}, unit weights. Under orderings
// that interleave X below s and U \ X above it, the collapse keeps a single
// s-t edge, so resistance-based sampling cannot drop any hyperedge.
inline UndirectedHypergraph appendix_instance(int n_u, int r) {
  if (n_u < 1 || r < 1 || r > n_u) {
    throw std::invalid_argument("appendix_instance: need 1 <= r <= n_u");
  }
  std::vector<Hyperedge> edges;
  std::vector<int> subset(r);
  std::iota(subset.begin(), subset.end(), 0);
  while (true) {
    std::vector<int> vertices{0, 1};
    for (int u : subset) vertices.push_back(u + 2);
    edges.push_back({std::move(vertices), 1.0});
    // next r-combination of {0, ..., n_u - 1}
    int i = r - 1;
    while (i >= 0 && subset[i] == n_u - r + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < r; ++j) subset[j] = subset[j - 1] + 1;
  }
  return UndirectedHypergraph(n_u + 2, std::move(edges));
}

inline UndirectedHypergraph generate_undirected(const GenSpec& spec) {
  if (spec.directed) throw std::invalid_argument("gen: spec asks for a directed instance");
  detail::check_gen_weights(spec);
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case GenKind::CompleteGraph: {
      if (spec.n < 1) throw std::invalid_argument("gen complete: need n >= 1");
      std::vector<Hyperedge> edges;
      for (int u = 0; u < spec.n; ++u) {
        for (int v = u + 1; v < spec.n; ++v) edges.push_back({{u, v}, detail::draw_weight(spec, rng)});
      }
      return UndirectedHypergraph(spec.n, std::move(edges));
    }
    case GenKind::Appendix:
      return appendix_instance(spec.n, spec.r);
    case GenKind::RandomUniform:
    case GenKind::RandomMixed: {
      if (spec.n < 2 || spec.r < 2 || spec.r > spec.n || spec.m < 0) {
        throw std::invalid_argument("gen random: need n >= 2, 2 <= r <= n, m >= 0");
      }
      std::vector<Hyperedge> edges;
      edges.reserve(spec.m);
      for (int e = 0; e < spec.m; ++e) {
        int k = spec.r;
        if (spec.kind == GenKind::RandomMixed) {
          k = std::uniform_int_distribution<int>(2, spec.r)(rng);
        }
        edges.push_back({detail::draw_subset(spec.n, k, rng), detail::draw_weight(spec, rng)});
      }
      return UndirectedHypergraph(spec.n, std::move(edges));
    }
  }
  throw std::invalid_argument("gen: unknown kind");
}

// Directed random instances: both sides of an arc share one size, fixed at r
// for RandomUniform and drawn uniformly from [1, r] for RandomMixed; tail and
// head are independent subsets and may overlap.
inline DirectedHypergraph generate_directed(const GenSpec& spec) {
  if (!spec.directed) throw std::invalid_argument("gen: spec asks for an undirected instance");
  if (spec.kind != GenKind::RandomUniform && spec.kind != GenKind::RandomMixed) {
    throw std::invalid_argument("gen: only random kinds support directed instances");
  }
  if (spec.n < 1 || spec.r < 1 || spec.r > spec.n || spec.m < 0) {
    throw std::invalid_argument("gen random: need n >= 1, 1 <= r <= n, m >= 0");
  }
  detail::check_gen_weights(spec);
  std::mt19937_64 rng(spec.seed);
  std::vector<Hyperarc> arcs;
  arcs.reserve(spec.m);
  for (int e = 0; e < spec.m; ++e) {
    int k = spec.r;
    if (spec.kind == GenKind::RandomMixed) {
      k = std::uniform_int_distribution<int>(1, spec.r)(rng);
    }
    std::vector<int> tail = detail::draw_subset(spec.n, k, rng);
    std::vector<int> head = detail::draw_subset(spec.n, k, rng);
    arcs.push_back({std::move(tail), std::move(head), detail::draw_weight(spec, rng)});
  }
  return DirectedHypergraph(spec.n, std::move(arcs));
}

// Collapsed-pair resistance demo on the shared-pair family: pick a hyperedge,
// build the separating potential (s at 1, its X at 0.75, the rest of U at
// 1.25, t at 0), sort, collapse, and measure the exact s-t graph resistance.
// The value is 1 for every hyperedge: each one is, under its own adversarial
// ordering, the only s-t connection, which is what rules out sampling by
// worst-case collapsed resistance. Codegree sampling has no such obstruction.
inline double appendix_demo(int n_u, int r, int edge_index) {
  const UndirectedHypergraph g = appendix_instance(n_u, r);
  if (edge_index < 0 || edge_index >= static_cast<int>(g.edges().size())) {
    throw std::invalid_argument("appendix_demo: edge index out of range");
  }
  const Hyperedge& e = g.edges()[static_cast<std::size_t>(edge_index)];
  std::vector<char> in_x(g.vertex_count(), 0);
  for (int v : e.vertices) in_x[v] = 1;

  constexpr double kSpread = 0.25;
  Eigen::VectorXd x(g.vertex_count());
  x(0) = 1.0;
  x(1) = 0.0;
  for (int v = 2; v < g.vertex_count(); ++v) x(v) = in_x[v] ? 1.0 - kSpread : 1.0 + kSpread;

  const Permutation pi = sort_permutation(x);
  const Graph collapsed = collapse(g, pi);
  return graph_effective_resistance(collapsed, 0, 1);
}

}  // namespace hgsparse
