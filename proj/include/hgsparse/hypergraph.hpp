#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgsparse {

// Vertices are dense 0-based integer ids; names, if any, are mapped at the
// I/O boundary. Weights are nonnegative doubles. Zero-weight edges are
// dropped at construction; all types are immutable afterwards.

struct Hyperedge {
  std::vector<int> vertices;  // sorted, distinct
  double weight = 0.0;
  bool operator==(const Hyperedge&) const = default;
};

struct Hyperarc {
  std::vector<int> tail;  // sorted, distinct, nonempty
  std::vector<int> head;  // sorted, distinct, nonempty; may overlap tail
  double weight = 0.0;
  bool operator==(const Hyperarc&) const = default;
};

namespace detail {

inline void canonicalize_vertex_set(std::vector<int>& v, int n, const char* what) {
  for (int id : v) {
    if (id < 0 || id >= n) {
      throw std::invalid_argument(std::string(what) + ": vertex " + std::to_string(id) +
                                  " out of range [0, " + std::to_string(n) + ")");
    }
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline void check_weight(double w, const char* what) {
  if (!(w >= 0.0)) {
    throw std::invalid_argument(std::string(what) + ": weight must be nonnegative, got " +
                                std::to_string(w));
  }
}

}  // namespace detail

class UndirectedHypergraph {
 public:
  UndirectedHypergraph() = default;

  UndirectedHypergraph(int n, std::vector<Hyperedge> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("hypergraph: negative vertex count");
    edges_.reserve(edges.size());
    for (Hyperedge& e : edges) {
      detail::check_weight(e.weight, "hyperedge");
      if (e.vertices.empty()) throw std::invalid_argument("hyperedge: empty vertex set");
      detail::canonicalize_vertex_set(e.vertices, n, "hyperedge");
      if (e.weight > 0.0) edges_.push_back(std::move(e));
    }
  }

  int vertex_count() const { return n_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }

  bool operator==(const UndirectedHypergraph&) const = default;

 private:
  int n_ = 0;
  std::vector<Hyperedge> edges_;
};

class DirectedHypergraph {
 public:
  DirectedHypergraph() = default;

  DirectedHypergraph(int n, std::vector<Hyperarc> arcs) : n_(n) {
    if (n < 0) throw std::invalid_argument("hypergraph: negative vertex count");
    arcs_.reserve(arcs.size());
    for (Hyperarc& a : arcs) {
      detail::check_weight(a.weight, "hyperarc");
      if (a.tail.empty() || a.head.empty()) {
        throw std::invalid_argument("hyperarc: tail and head must be nonempty");
      }
      detail::canonicalize_vertex_set(a.tail, n, "hyperarc tail");
      detail::canonicalize_vertex_set(a.head, n, "hyperarc head");
      if (a.weight > 0.0) arcs_.push_back(std::move(a));
    }
  }

  int vertex_count() const { return n_; }
  const std::vector<Hyperarc>& arcs() const { return arcs_; }

  bool operator==(const DirectedHypergraph&) const = default;

 private:
  int n_ = 0;
  std::vector<Hyperarc> arcs_;
};

// Ordering of the vertex set. order()[i] is the vertex at (0-based) position
// i; rank(v) is the 1-based position of v, matching the usual convention for
// crossing positions 1..n-1.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> order) : order_(std::move(order)) {
    const int n = static_cast<int>(order_.size());
    rank_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      int v = order_[i];
      if (v < 0 || v >= n || rank_[v] != 0) {
        throw std::invalid_argument("permutation: order is not a bijection on [0, n)");
      }
      rank_[v] = i + 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    return Permutation(std::move(order));
  }

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }
  int rank(int v) const { return rank_[v]; }
  const std::vector<int>& ranks() const { return rank_; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> order_;
  std::vector<int> rank_;  // 1-based
};

// Pairwise total weights d(u,v). Undirected: weight of edges containing both
// u and v (diagonal = weighted degree, unused by sampling). Directed: weight
// of arcs with u in the tail and v in the head; generally asymmetric.
struct CodegreeMatrix {
  Eigen::MatrixXd d;
  bool directed = false;
  double operator()(int u, int v) const { return d(u, v); }
};

// Partial labeling of the vertex set; the key set is the constrained set.
using Labeling = std::map<int, double>;

namespace detail {

inline void check_dimension(const Eigen::VectorXd& x, int n) {
  if (x.size() != n) {
    throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                " does not match vertex count " + std::to_string(n));
  }
}

inline std::vector<char> subset_mask(const std::vector<int>& s, int n) {
  std::vector<char> in(n, 0);
  for (int v : s) {
    if (v < 0 || v >= n) {
      throw std::invalid_argument("subset: vertex " + std::to_string(v) + " out of range [0, " +
                                  std::to_string(n) + ")");
    }
    in[v] = 1;
  }
  return in;
}

}  // namespace detail

// Energy of x: sum over hyperedges of w(e) * (spread of x over e)^2.
inline double quadratic_form(const UndirectedHypergraph& g, const Eigen::VectorXd& x) {
  detail::check_dimension(x, g.vertex_count());
  double total = 0.0;
  for (const Hyperedge& e : g.edges()) {
    double lo = x(e.vertices.front());
    double hi = lo;
    for (int v : e.vertices) {
      lo = std::min(lo, x(v));
      hi = std::max(hi, x(v));
    }
    const double gap = hi - lo;
    total += e.weight * gap * gap;
  }
  return total;
}

// Directed energy: the tail-to-head drop, clamped at zero, squared.
inline double quadratic_form(const DirectedHypergraph& g, const Eigen::VectorXd& x) {
  detail::check_dimension(x, g.vertex_count());
  double total = 0.0;
  for (const Hyperarc& a : g.arcs()) {
    double hi = x(a.tail.front());
    for (int v : a.tail) hi = std::max(hi, x(v));
    double lo = x(a.head.front());
    for (int v : a.head) lo = std::min(lo, x(v));
    const double gap = hi - lo;
    if (gap > 0.0) total += a.weight * gap * gap;
  }
  return total;
}

// Total weight of hyperedges with a vertex on each side of the (S, V\S) split.
inline double cut_weight(const UndirectedHypergraph& g, const std::vector<int>& s) {
  const std::vector<char> in = detail::subset_mask(s, g.vertex_count());
  double total = 0.0;
  for (const Hyperedge& e : g.edges()) {
    bool inside = false, outside = false;
    for (int v : e.vertices) (in[v] ? inside : outside) = true;
    if (inside && outside) total += e.weight;
  }
  return total;
}

// Total weight of hyperarcs with a tail vertex in S and a head vertex outside.
inline double cut_weight(const DirectedHypergraph& g, const std::vector<int>& s) {
  const std::vector<char> in = detail::subset_mask(s, g.vertex_count());
  double total = 0.0;
  for (const Hyperarc& a : g.arcs()) {
    bool tail_in = false;
    for (int v : a.tail) tail_in |= (in[v] != 0);
    if (!tail_in) continue;
    bool head_out = false;
    for (int v : a.head) head_out |= (in[v] == 0);
    if (head_out) total += a.weight;
  }
  return total;
}

inline CodegreeMatrix codegree_matrix(const UndirectedHypergraph& g) {
  const int n = g.vertex_count();
  CodegreeMatrix cd{Eigen::MatrixXd::Zero(n, n), false};
  for (const Hyperedge& e : g.edges()) {
    for (int u : e.vertices) {
      for (int v : e.vertices) cd.d(u, v) += e.weight;
    }
  }
  return cd;
}

inline CodegreeMatrix codegree_matrix(const DirectedHypergraph& g) {
  const int n = g.vertex_count();
  CodegreeMatrix cd{Eigen::MatrixXd::Zero(n, n), true};
  for (const Hyperarc& a : g.arcs()) {
    for (int u : a.tail) {
      for (int v : a.head) cd.d(u, v) += a.weight;
    }
  }
  return cd;
}

inline std::int64_t size(const UndirectedHypergraph& g) {
  std::int64_t total = 0;
  for (const Hyperedge& e : g.edges()) total += static_cast<std::int64_t>(e.vertices.size());
  return total;
}

inline std::int64_t size(const DirectedHypergraph& g) {
  std::int64_t total = 0;
  for (const Hyperarc& a : g.arcs()) {
    total += static_cast<std::int64_t>(a.tail.size() + a.head.size());
  }
  return total;
}

// Ordering with x(order[0]) >= ... >= x(order[n-1]); ties broken by
// ascending vertex id, so every x lies in the monotone cone of its own
// sort permutation.
inline Permutation sort_permutation(const Eigen::VectorXd& x) {
  std::vector<int> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&x](int a, int b) { return x(a) != x(b) ? x(a) > x(b) : a < b; });
  return Permutation(std::move(order));
}

}  // namespace hgsparse
