#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/random.hpp"

namespace hgsparse {

// Ordinary weighted graphs and the position-crossing view induced by a vertex
// ordering. An edge {u,v} crosses position i in 1..n-1 when the gap between
// positions i and i+1 separates its endpoints; the crossing-degree matrix
// aggregates edge weights over pairs of crossed positions and is what the
// sampling certificates compare.

struct GraphEdge {
  int u = 0, v = 0;  // u < v
  double weight = 0.0;
  bool operator==(const GraphEdge&) const = default;
};

class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<GraphEdge> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    edges_.reserve(edges.size());
    for (GraphEdge& e : edges) {
      detail::check_weight(e.weight, "edge");
      if (e.u == e.v) throw std::invalid_argument("graph: self-loop edge");
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 0 || e.v >= n) throw std::invalid_argument("graph: vertex out of range");
      if (e.weight > 0.0) edges_.push_back(e);
    }
  }

  explicit Graph(const UndirectedHypergraph& g) : n_(g.vertex_count()) {
    edges_.reserve(g.edges().size());
    for (const Hyperedge& e : g.edges()) {
      if (e.vertices.size() != 2) {
        throw std::invalid_argument("graph: hypergraph is not 2-uniform");
      }
      edges_.push_back({e.vertices[0], e.vertices[1], e.weight});
    }
  }

  int vertex_count() const { return n_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  UndirectedHypergraph as_hypergraph() const {
    std::vector<Hyperedge> edges;
    edges.reserve(edges_.size());
    for (const GraphEdge& e : edges_) edges.push_back({{e.u, e.v}, e.weight});
    return UndirectedHypergraph(n_, std::move(edges));
  }

  bool operator==(const Graph&) const = default;

 private:
  int n_ = 0;
  std::vector<GraphEdge> edges_;
};

inline double quadratic_form(const Graph& g, const Eigen::VectorXd& x) {
  detail::check_dimension(x, g.vertex_count());
  double total = 0.0;
  for (const GraphEdge& e : g.edges()) {
    const double gap = x(e.u) - x(e.v);
    total += e.weight * gap * gap;
  }
  return total;
}

inline bool edge_crosses(const GraphEdge& e, int i, const Permutation& pi) {
  const int ru = pi.rank(e.u), rv = pi.rank(e.v);
  return std::min(ru, rv) <= i && i < std::max(ru, rv);
}

// Symmetric (n-1)x(n-1) matrix over positions 1..n-1, accessed 1-based.
struct CrossingDegreeMatrix {
  Eigen::MatrixXd d;
  double operator()(int i, int j) const { return d(i - 1, j - 1); }
  int positions() const { return static_cast<int>(d.rows()); }
};

namespace detail {

// Adds w to the square of positions [lo, hi-1] (1-based ranks lo < hi).
inline void add_crossing_block(Eigen::MatrixXd& d, int lo, int hi, double w) {
  d.block(lo - 1, lo - 1, hi - lo, hi - lo).array() += w;
}

}  // namespace detail

inline CrossingDegreeMatrix crossing_degree_matrix(const Graph& g, const Permutation& pi) {
  const int n = g.vertex_count();
  CrossingDegreeMatrix cd{Eigen::MatrixXd::Zero(n - 1, n - 1)};
  for (const GraphEdge& e : g.edges()) {
    const int ru = pi.rank(e.u), rv = pi.rank(e.v);
    detail::add_crossing_block(cd.d, std::min(ru, rv), std::max(ru, rv), e.weight);
  }
  return cd;
}

// 0/1 edge-by-position incidence; row e has ones exactly on the positions e
// crosses, a contiguous block.
inline Eigen::MatrixXd crossing_incidence(const Graph& g, const Permutation& pi) {
  const int n = g.vertex_count();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.edges().size()), n - 1);
  for (Eigen::Index row = 0; row < b.rows(); ++row) {
    const GraphEdge& e = g.edges()[static_cast<std::size_t>(row)];
    const int lo = std::min(pi.rank(e.u), pi.rank(e.v));
    const int hi = std::max(pi.rank(e.u), pi.rank(e.v));
    for (int i = lo; i < hi; ++i) b(row, i - 1) = 1.0;
  }
  return b;
}

// Per-edge sampling thresholds w(e) / min crossing degree over the positions
// e crosses; always in (0, 1] because e itself contributes to every entry of
// its own crossing block.
inline std::vector<double> crossing_thresholds(const Graph& g, const Permutation& pi) {
  if (g.edges().empty()) throw std::invalid_argument("crossing_thresholds: graph has no edges");
  const CrossingDegreeMatrix cd = crossing_degree_matrix(g, pi);
  std::vector<double> probs;
  probs.reserve(g.edges().size());
  for (const GraphEdge& e : g.edges()) {
    const int lo = std::min(pi.rank(e.u), pi.rank(e.v));
    const int hi = std::max(pi.rank(e.u), pi.rank(e.v));
    const double dmin = cd.d.block(lo - 1, lo - 1, hi - lo, hi - lo).minCoeff();
    probs.push_back(e.weight / dmin);
  }
  return probs;
}

namespace detail {

inline double log_binom2(int n) {
  return std::log(static_cast<double>(n) * (n - 1) / 2.0);
}

inline void check_rate_params(double eps, double delta, const char* what) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument(std::string(what) + ": epsilon must lie in (0, 1)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument(std::string(what) + ": delta must lie in (0, 1)");
  }
}

}  // namespace detail

// Round count for fixed-order graph sampling: the smallest K with
// 2 exp(-eps^2 K / 3) <= delta / C(n,2), the union bound over position pairs.
inline int graph_sample_rounds(int n, double eps, double delta) {
  detail::check_rate_params(eps, delta, "graph_sample_rounds");
  if (n < 2) throw std::invalid_argument("graph_sample_rounds: need n >= 2");
  const double k = 3.0 * (std::log(2.0) + detail::log_binom2(n) + std::log(1.0 / delta)) /
                   (eps * eps);
  return static_cast<int>(std::ceil(k));
}

// K independent keep/skip rounds per edge; each success adds w(e)/(K p_e), so
// output weights are unbiased. Edges never hit are dropped. Deterministic
// given the seed, with per-(round, edge) draws on counter-based streams.
inline Graph round_sample(const Graph& g, double eps, double delta,
                          const std::vector<double>& probs, std::uint64_t rng_seed) {
  if (probs.size() != g.edges().size()) {
    throw std::invalid_argument("round_sample: one probability per edge required");
  }
  for (double p : probs) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw std::invalid_argument("round_sample: probabilities must lie in (0, 1]");
    }
  }
  const int rounds = graph_sample_rounds(g.vertex_count(), eps, delta);
  std::vector<GraphEdge> kept;
  for (std::size_t idx = 0; idx < g.edges().size(); ++idx) {
    int hits = 0;
    for (int k = 0; k < rounds; ++k) {
      hits += coin_flip(rng_seed, idx, static_cast<std::uint64_t>(k), probs[idx]);
    }
    if (hits > 0) {
      GraphEdge e = g.edges()[idx];
      e.weight *= static_cast<double>(hits) / (rounds * probs[idx]);
      kept.push_back(e);
    }
  }
  return Graph(g.vertex_count(), std::move(kept));
}

// Shrinks each hyperedge to its extreme-rank pair; on the monotone cone of pi
// the graph's quadratic form agrees with the hypergraph's. Singleton edges
// vanish. Parallel edges from distinct hyperedges are kept separate.
inline Graph collapse(const UndirectedHypergraph& g, const Permutation& pi) {
  std::vector<GraphEdge> edges;
  edges.reserve(g.edges().size());
  for (const Hyperedge& e : g.edges()) {
    int first = e.vertices.front(), last = e.vertices.front();
    for (int v : e.vertices) {
      if (pi.rank(v) < pi.rank(first)) first = v;
      if (pi.rank(v) > pi.rank(last)) last = v;
    }
    if (first != last) edges.push_back({first, last, e.weight});
  }
  return Graph(g.vertex_count(), std::move(edges));
}

// Directed variant: the min-rank tail vertex against the max-rank head
// vertex, kept only when the tail side comes first (elsewhere the clamped
// form contributes nothing on the cone).
inline Graph collapse(const DirectedHypergraph& g, const Permutation& pi) {
  std::vector<GraphEdge> edges;
  edges.reserve(g.arcs().size());
  for (const Hyperarc& a : g.arcs()) {
    int s = a.tail.front();
    for (int v : a.tail) {
      if (pi.rank(v) < pi.rank(s)) s = v;
    }
    int t = a.head.front();
    for (int v : a.head) {
      if (pi.rank(v) > pi.rank(t)) t = v;
    }
    if (pi.rank(s) < pi.rank(t)) edges.push_back({s, t, a.weight});
  }
  return Graph(g.vertex_count(), std::move(edges));
}

// Fused collapse + crossing degrees, the hot loop of the all-permutations
// certificate.
inline CrossingDegreeMatrix crossing_degree_matrix(const UndirectedHypergraph& g,
                                                   const Permutation& pi) {
  const int n = g.vertex_count();
  CrossingDegreeMatrix cd{Eigen::MatrixXd::Zero(n - 1, n - 1)};
  for (const Hyperedge& e : g.edges()) {
    int lo = pi.rank(e.vertices.front()), hi = lo;
    for (int v : e.vertices) {
      lo = std::min(lo, pi.rank(v));
      hi = std::max(hi, pi.rank(v));
    }
    if (lo < hi) detail::add_crossing_block(cd.d, lo, hi, e.weight);
  }
  return cd;
}

inline CrossingDegreeMatrix crossing_degree_matrix(const DirectedHypergraph& g,
                                                   const Permutation& pi) {
  const int n = g.vertex_count();
  CrossingDegreeMatrix cd{Eigen::MatrixXd::Zero(n - 1, n - 1)};
  for (const Hyperarc& a : g.arcs()) {
    int lo = pi.rank(a.tail.front());
    for (int v : a.tail) lo = std::min(lo, pi.rank(v));
    int hi = pi.rank(a.head.front());
    for (int v : a.head) hi = std::max(hi, pi.rank(v));
    if (lo < hi) detail::add_crossing_block(cd.d, lo, hi, a.weight);
  }
  return cd;
}

}  // namespace hgsparse
