#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/ordered_graph.hpp"
#include "hgsparse/random.hpp"

namespace hgsparse {

// Codegree-driven hyperedge sampling. Each edge is kept over K rounds with
// probability w(e) / min codegree over its vertex pairs; successes are
// reweighted by w(e)/(K p_e). The expected number of retained edges is
// K * sum(p_e), and sum(p_e) is at most C(n,2) undirected / n(n-1) directed.

struct SamplingPlan {
  std::vector<double> probabilities;      // per edge/arc, each in (0, 1]
  std::vector<std::uint8_t> passthrough;  // inert entries: copied unchanged, not sampled
  int rounds = 1;                         // K
  double epsilon = 0.0;
  double delta = 0.0;
  double sum_p = 0.0;                     // over sampled (non-passthrough) entries
};

struct SparsifyReport {
  int retained_count = 0;        // output edges with positive weight
  double expected_retained = 0;  // K * sum_p
  int rounds = 0;
  double sum_p = 0.0;
  std::uint64_t seed = 0;
};

// Round count for hypergraph sampling: the graph bound taken through a union
// over all n! orderings, i.e. the smallest K with
// 2 exp(-eps^2 K / 3) <= delta / (n! * C(n,2)).
inline int hypergraph_sample_rounds(int n, double eps, double delta) {
  detail::check_rate_params(eps, delta, "hypergraph_sample_rounds");
  if (n < 2) throw std::invalid_argument("hypergraph_sample_rounds: need n >= 2");
  double log_factorial = 0.0;
  for (int i = 2; i <= n; ++i) log_factorial += std::log(static_cast<double>(i));
  const double k = 3.0 *
                   (std::log(2.0) + detail::log_binom2(n) + log_factorial +
                    std::log(1.0 / delta)) /
                   (eps * eps);
  return static_cast<int>(std::ceil(k));
}

namespace detail {

inline void finish_plan(SamplingPlan& plan, int n, double eps, double delta) {
  plan.epsilon = eps;
  plan.delta = delta;
  plan.rounds = n >= 2 ? hypergraph_sample_rounds(n, eps, delta) : 1;
  plan.sum_p = 0.0;
  for (std::size_t i = 0; i < plan.probabilities.size(); ++i) {
    if (!plan.passthrough[i]) plan.sum_p += plan.probabilities[i];
  }
}

}  // namespace detail

// p_e = w(e) / min codegree over distinct vertex pairs inside e. Singleton
// edges contribute nothing to any quadratic form or cut; they are marked
// passthrough and excluded from the sampled mass.
inline SamplingPlan sampling_plan(const UndirectedHypergraph& g, double eps, double delta) {
  const CodegreeMatrix cd = codegree_matrix(g);
  SamplingPlan plan;
  plan.probabilities.reserve(g.edges().size());
  plan.passthrough.reserve(g.edges().size());
  for (const Hyperedge& e : g.edges()) {
    if (e.vertices.size() < 2) {
      plan.probabilities.push_back(1.0);
      plan.passthrough.push_back(1);
      continue;
    }
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < e.vertices.size(); ++i) {
      for (std::size_t j = i + 1; j < e.vertices.size(); ++j) {
        dmin = std::min(dmin, cd(e.vertices[i], e.vertices[j]));
      }
    }
    plan.probabilities.push_back(e.weight / dmin);
    plan.passthrough.push_back(0);
  }
  detail::finish_plan(plan, g.vertex_count(), eps, delta);
  return plan;
}

// p_e = w(e) / min codegree over tail x head pairs, including u = v when the
// sides overlap. Arcs whose only pair is (v, v) are inert: their probability
// is still reported, but they are passthrough for sampling purposes.
inline SamplingPlan sampling_plan(const DirectedHypergraph& g, double eps, double delta) {
  const CodegreeMatrix cd = codegree_matrix(g);
  SamplingPlan plan;
  plan.probabilities.reserve(g.arcs().size());
  plan.passthrough.reserve(g.arcs().size());
  for (const Hyperarc& a : g.arcs()) {
    double dmin = std::numeric_limits<double>::infinity();
    for (int u : a.tail) {
      for (int v : a.head) dmin = std::min(dmin, cd(u, v));
    }
    plan.probabilities.push_back(a.weight / dmin);
    const bool inert = a.tail.size() == 1 && a.head.size() == 1 && a.tail == a.head;
    plan.passthrough.push_back(inert ? 1 : 0);
  }
  detail::finish_plan(plan, g.vertex_count(), eps, delta);
  return plan;
}

namespace detail {

template <class EdgeT>
std::vector<EdgeT> resample_edges(const std::vector<EdgeT>& edges, const SamplingPlan& plan,
                                  std::uint64_t seed, bool fast, SparsifyReport* report) {
  if (plan.probabilities.size() != edges.size() || plan.passthrough.size() != edges.size()) {
    throw std::invalid_argument("resample: plan does not cover the edge set");
  }
  if (plan.rounds < 1) throw std::invalid_argument("resample: round count must be >= 1");
  for (double p : plan.probabilities) {
    if (!(p > 0.0 && p <= 1.0)) {
      throw std::invalid_argument("resample: probabilities must lie in (0, 1]");
    }
  }
  const int rounds = plan.rounds;
  std::vector<EdgeT> kept;
  for (std::size_t idx = 0; idx < edges.size(); ++idx) {
    if (plan.passthrough[idx]) {
      kept.push_back(edges[idx]);
      continue;
    }
    const double p = plan.probabilities[idx];
    int hits = 0;
    if (fast) {
      hits = binomial_draw(rounds, p, seed, idx);
    } else {
      for (int k = 0; k < rounds; ++k) {
        hits += coin_flip(seed, idx, static_cast<std::uint64_t>(k), p);
      }
    }
    if (hits > 0) {
      EdgeT e = edges[idx];
      e.weight *= static_cast<double>(hits) / (rounds * p);
      kept.push_back(e);
    }
  }
  if (report) {
    *report = SparsifyReport{static_cast<int>(kept.size()), rounds * plan.sum_p, rounds,
                             plan.sum_p, seed};
  }
  return kept;
}

}  // namespace detail

// K explicit keep/skip rounds per edge (counter-based per-(edge, round)
// draws); deterministic given the seed.
inline UndirectedHypergraph resample(const UndirectedHypergraph& g, const SamplingPlan& plan,
                                     std::uint64_t seed, SparsifyReport* report = nullptr) {
  return UndirectedHypergraph(g.vertex_count(),
                              detail::resample_edges(g.edges(), plan, seed, false, report));
}

inline DirectedHypergraph resample(const DirectedHypergraph& g, const SamplingPlan& plan,
                                   std::uint64_t seed, SparsifyReport* report = nullptr) {
  return DirectedHypergraph(g.vertex_count(),
                            detail::resample_edges(g.arcs(), plan, seed, false, report));
}

// Per-edge success counts drawn directly from Binomial(K, p): distributionally
// identical to the explicit rounds, one draw per edge.
inline UndirectedHypergraph resample_fast(const UndirectedHypergraph& g, const SamplingPlan& plan,
                                          std::uint64_t seed, SparsifyReport* report = nullptr) {
  return UndirectedHypergraph(g.vertex_count(),
                              detail::resample_edges(g.edges(), plan, seed, true, report));
}

inline DirectedHypergraph resample_fast(const DirectedHypergraph& g, const SamplingPlan& plan,
                                        std::uint64_t seed, SparsifyReport* report = nullptr) {
  return DirectedHypergraph(g.vertex_count(),
                            detail::resample_edges(g.arcs(), plan, seed, true, report));
}

namespace detail {

template <class HypergraphT>
std::pair<HypergraphT, SparsifyReport> sparsify_impl(const HypergraphT& g, double eps,
                                                     std::uint64_t seed,
                                                     std::optional<double> delta) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("sparsify: epsilon must lie in (0, 1)");
  }
  const int n = g.vertex_count();
  const double d = delta.value_or(n >= 1 ? 1.0 / (2.0 * n) : 0.5);
  const SamplingPlan plan = sampling_plan(g, eps, d);
  SparsifyReport report;
  HypergraphT h = resample_fast(g, plan, seed, &report);
  return {std::move(h), report};
}

}  // namespace detail

// One-call driver: codegree probabilities, delta defaulting to 1/(2n), and
// the binomial fast path.
inline std::pair<UndirectedHypergraph, SparsifyReport> sparsify(
    const UndirectedHypergraph& g, double eps, std::uint64_t seed,
    std::optional<double> delta = std::nullopt) {
  return detail::sparsify_impl(g, eps, seed, delta);
}

inline std::pair<DirectedHypergraph, SparsifyReport> sparsify(
    const DirectedHypergraph& g, double eps, std::uint64_t seed,
    std::optional<double> delta = std::nullopt) {
  return detail::sparsify_impl(g, eps, seed, delta);
}

}  // namespace hgsparse
