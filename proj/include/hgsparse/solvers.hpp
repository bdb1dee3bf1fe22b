#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/ordered_graph.hpp"

namespace hgsparse {

// Convex solvers over the hypergraph quadratic form: effective resistance in
// both its max and constrained-min formulations, and semi-supervised label
// completion. All three run the same projected subgradient loop with
// diminishing steps step0/sqrt(k) and best-iterate tracking.

struct SolverParams {
  int max_iters = 100000;
  double tol = 1e-8;   // relative best-objective change over a 100-iteration window
  double step0 = 1.0;  // initial step of the diminishing schedule
};

struct SolveResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations_used = 0;
  bool converged = false;
};

// Thrown when the requested value is a supremum over an unbounded program
// (s and t not connected in the undirected support).
struct UnboundedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A subgradient of the quadratic form: each edge contributes through its
// maximizing pair (ties broken towards lowest vertex ids), nothing when the
// (clamped) gap is zero.
inline Eigen::VectorXd quadratic_form_subgradient(const UndirectedHypergraph& g,
                                                  const Eigen::VectorXd& x) {
  detail::check_dimension(x, g.vertex_count());
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(x.size());
  for (const Hyperedge& e : g.edges()) {
    int hi = e.vertices.front(), lo = e.vertices.front();
    for (int v : e.vertices) {
      if (x(v) > x(hi)) hi = v;
      if (x(v) < x(lo)) lo = v;
    }
    const double gap = x(hi) - x(lo);
    if (gap > 0.0) {
      grad(hi) += 2.0 * e.weight * gap;
      grad(lo) -= 2.0 * e.weight * gap;
    }
  }
  return grad;
}

inline Eigen::VectorXd quadratic_form_subgradient(const DirectedHypergraph& g,
                                                  const Eigen::VectorXd& x) {
  detail::check_dimension(x, g.vertex_count());
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(x.size());
  for (const Hyperarc& a : g.arcs()) {
    int hi = a.tail.front();
    for (int v : a.tail) {
      if (x(v) > x(hi)) hi = v;
    }
    int lo = a.head.front();
    for (int v : a.head) {
      if (x(v) < x(lo)) lo = v;
    }
    const double gap = x(hi) - x(lo);
    if (gap > 0.0) {
      grad(hi) += 2.0 * a.weight * gap;
      grad(lo) -= 2.0 * a.weight * gap;
    }
  }
  return grad;
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline UnionFind support_components(const UndirectedHypergraph& g) {
  UnionFind uf(g.vertex_count());
  for (const Hyperedge& e : g.edges()) {
    for (int v : e.vertices) uf.unite(e.vertices.front(), v);
  }
  return uf;
}

inline UnionFind support_components(const DirectedHypergraph& g) {
  UnionFind uf(g.vertex_count());
  for (const Hyperarc& a : g.arcs()) {
    for (int v : a.tail) uf.unite(a.tail.front(), v);
    for (int v : a.head) uf.unite(a.tail.front(), v);
  }
  return uf;
}

inline void check_vertex_pair(int s, int t, int n, const char* what) {
  if (s < 0 || s >= n || t < 0 || t >= n) {
    throw std::invalid_argument(std::string(what) + ": vertex out of range");
  }
  if (s == t) throw std::invalid_argument(std::string(what) + ": s and t must differ");
}

inline double max_weighted_degree(const UndirectedHypergraph& g) {
  std::vector<double> degree(g.vertex_count(), 0.0);
  for (const Hyperedge& e : g.edges()) {
    for (int v : e.vertices) degree[v] += e.weight;
  }
  return degree.empty() ? 0.0 : *std::max_element(degree.begin(), degree.end());
}

inline double max_weighted_degree(const DirectedHypergraph& g) {
  std::vector<double> degree(g.vertex_count(), 0.0);
  for (const Hyperarc& a : g.arcs()) {
    for (int v : a.tail) degree[v] += a.weight;
    for (int v : a.head) {
      degree[v] += a.weight;  // counted once more if also in the tail; upper bound either way
    }
  }
  return degree.empty() ? 0.0 : *std::max_element(degree.begin(), degree.end());
}

// Minimizes Q(x) + linear.dot(x) over x with the coordinates in `pinned`
// frozen at their initial values.
template <class HypergraphT>
SolveResult subgradient_minimize(const HypergraphT& g, Eigen::VectorXd x,
                                 const Eigen::VectorXd& linear, const std::vector<char>& pinned,
                                 const SolverParams& params) {
  if (params.max_iters < 1 || !(params.tol > 0.0) || !(params.step0 > 0.0)) {
    throw std::invalid_argument("solver: max_iters >= 1, tol > 0, step0 > 0 required");
  }
  constexpr int kWindow = 100;
  // The curvature of the form along any direction is at most 4x the largest
  // weighted degree; dividing the schedule by it keeps every step of
  // step0/sqrt(k) contractive instead of blowing up on heavy instances.
  const double step_scale = params.step0 / std::max(1.0, 4.0 * max_weighted_degree(g));
  auto objective = [&](const Eigen::VectorXd& v) { return quadratic_form(g, v) + linear.dot(v); };

  SolveResult best;
  best.x = x;
  best.objective = objective(x);
  std::vector<double> history{best.objective};

  bool converged = false;
  int used = 0;
  for (int k = 1; k <= params.max_iters; ++k) {
    Eigen::VectorXd grad = quadratic_form_subgradient(g, x) + linear;
    for (Eigen::Index i = 0; i < grad.size(); ++i) {
      if (pinned[static_cast<std::size_t>(i)]) grad(i) = 0.0;
    }
    x -= (step_scale / std::sqrt(static_cast<double>(k))) * grad;
    used = k;

    const double f = objective(x);
    if (f < best.objective) {
      best.objective = f;
      best.x = x;
    }
    history.push_back(best.objective);
    if (k >= kWindow) {
      const double drop = history[history.size() - 1 - kWindow] - best.objective;
      if (drop <= params.tol * std::max(1.0, std::abs(best.objective))) {
        converged = true;
        break;
      }
    }
  }
  best.iterations_used = used;
  best.converged = converged;
  best.objective = objective(best.x);
  return best;
}

template <class HypergraphT>
SolveResult effective_resistance_impl(const HypergraphT& g, int s, int t,
                                      const SolverParams& params) {
  const int n = g.vertex_count();
  check_vertex_pair(s, t, n, "effective_resistance");
  UnionFind uf = support_components(g);
  if (uf.find(s) != uf.find(t)) {
    throw UnboundedError("effective_resistance: s and t are not connected");
  }
  // maximize 2(x_s - x_t) - Q(x) == minimize Q(x) - 2(x_s - x_t)
  Eigen::VectorXd linear = Eigen::VectorXd::Zero(n);
  linear(s) = -2.0;
  linear(t) = 2.0;
  SolveResult result = subgradient_minimize(g, Eigen::VectorXd::Zero(n), linear,
                                            std::vector<char>(n, 0), params);
  result.objective = -result.objective;
  return result;
}

template <class HypergraphT>
SolveResult constrained_energy_impl(const HypergraphT& g, int s, int t,
                                    const SolverParams& params) {
  const int n = g.vertex_count();
  check_vertex_pair(s, t, n, "constrained_energy");
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
  x0(s) = 1.0;
  x0(t) = -1.0;
  std::vector<char> pinned(n, 0);
  pinned[s] = pinned[t] = 1;
  return subgradient_minimize(g, std::move(x0), Eigen::VectorXd::Zero(n), pinned, params);
}

}  // namespace detail

// R(s, t): the maximum of 2(x_s - x_t) - Q(x), matching the classical
// electrical resistance on ordinary graphs.
inline SolveResult effective_resistance(const UndirectedHypergraph& g, int s, int t,
                                        const SolverParams& params = {}) {
  return detail::effective_resistance_impl(g, s, t, params);
}

inline SolveResult effective_resistance(const DirectedHypergraph& g, int s, int t,
                                        const SolverParams& params = {}) {
  return detail::effective_resistance_impl(g, s, t, params);
}

// Exact resistance on an ordinary graph via the Laplacian pseudoinverse;
// serves as the independent reference for the iterative solver.
inline double graph_effective_resistance(const Graph& g, int s, int t) {
  const int n = g.vertex_count();
  detail::check_vertex_pair(s, t, n, "graph_effective_resistance");
  detail::UnionFind uf(n);
  for (const GraphEdge& e : g.edges()) uf.unite(e.u, e.v);
  if (uf.find(s) != uf.find(t)) {
    throw UnboundedError("graph_effective_resistance: s and t are not connected");
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const GraphEdge& e : g.edges()) {
    lap(e.u, e.u) += e.weight;
    lap(e.v, e.v) += e.weight;
    lap(e.u, e.v) -= e.weight;
    lap(e.v, e.u) -= e.weight;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(s) = 1.0;
  b(t) = -1.0;
  const double lambda_max = eig.eigenvalues().maxCoeff();
  const double cutoff = 1e-12 * std::max(1.0, lambda_max) * n;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues()(i);
    if (lambda > cutoff) x += (eig.eigenvectors().col(i).dot(b) / lambda) * eig.eigenvectors().col(i);
  }
  return x(s) - x(t);
}

// min Q(x) subject to x(s) = 1, x(t) = -1. Reported on its own; for a single
// edge of weight w this program evaluates to 4w while the max formulation
// gives 1/w, so no identity between the two is asserted anywhere.
inline SolveResult constrained_energy(const UndirectedHypergraph& g, int s, int t,
                                      const SolverParams& params = {}) {
  return detail::constrained_energy_impl(g, s, t, params);
}

inline SolveResult constrained_energy(const DirectedHypergraph& g, int s, int t,
                                      const SolverParams& params = {}) {
  return detail::constrained_energy_impl(g, s, t, params);
}

// Label completion: minimize the directed form with the labeled coordinates
// frozen; unlabeled coordinates start at the label mean.
inline SolveResult ssl_solve(const DirectedHypergraph& g, const Labeling& labels,
                             const SolverParams& params = {}) {
  const int n = g.vertex_count();
  for (const auto& [v, value] : labels) {
    if (v < 0 || v >= n) {
      throw std::invalid_argument("ssl_solve: labeled vertex " + std::to_string(v) +
                                  " out of range");
    }
  }
  if (labels.empty()) {
    SolveResult result;
    result.x = Eigen::VectorXd::Zero(n);
    result.objective = 0.0;
    result.converged = true;
    return result;
  }
  double mean = 0.0;
  for (const auto& [v, value] : labels) mean += value;
  mean /= static_cast<double>(labels.size());

  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(n, mean);
  std::vector<char> pinned(n, 0);
  for (const auto& [v, value] : labels) {
    x0(v) = value;
    pinned[v] = 1;
  }
  return detail::subgradient_minimize(g, std::move(x0), Eigen::VectorXd::Zero(n), pinned, params);
}

}  // namespace hgsparse
