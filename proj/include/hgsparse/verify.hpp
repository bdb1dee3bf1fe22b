#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hgsparse/hypergraph.hpp"
#include "hgsparse/ordered_graph.hpp"
#include "hgsparse/random.hpp"
#include "hgsparse/solvers.hpp"

namespace hgsparse {

// Checks of the two-sided sparsifier condition
//   (1 - eps) Q_H <= Q_G <= (1 + eps) Q_H
// at increasing strength: exhaustive cuts (indicator vectors only), sampled
// vectors (necessary evidence), and the all-permutations crossing-degree
// certificate (sufficient proof). Enumeration guards refuse oversized inputs
// rather than silently truncating.

struct PermutationPositionWitness {
  Permutation pi;
  int i = 0, j = 0;  // 1-based crossing positions
};

// Violation evidence: a vertex subset, a test vector, a (pi, i, j) crossing
// entry, or an observed statistic, depending on the check.
using VerifyWitness =
    std::variant<std::vector<int>, Eigen::VectorXd, PermutationPositionWitness, double>;

struct VerifyReport {
  bool passed = true;
  std::int64_t checks_run = 0;
  // Extremes of the observed kappa_G/kappa_H (or Q_G/Q_H) ratios over
  // nondegenerate checks; 1.0 when nothing nondegenerate was seen.
  double worst_ratio_low = 1.0;
  double worst_ratio_high = 1.0;
  std::optional<VerifyWitness> witness;
};

namespace detail {

struct RatioTracker {
  double low = std::numeric_limits<double>::infinity();
  double high = -std::numeric_limits<double>::infinity();
  bool seen = false;

  void observe(double num, double den) {
    if (den <= 1e-12 * std::max(1.0, num)) return;
    const double r = num / den;
    low = std::min(low, r);
    high = std::max(high, r);
    seen = true;
  }

  void finish(VerifyReport& report) const {
    report.worst_ratio_low = seen ? low : 1.0;
    report.worst_ratio_high = seen ? high : 1.0;
  }
};

// Two-sided band membership with additive floating-point slack.
inline bool within_band(double value_g, double value_h, double eps) {
  const double slack = 1e-9 * std::max({value_g, value_h, 1.0});
  return (1.0 - eps) * value_h <= value_g + slack && value_g <= (1.0 + eps) * value_h + slack;
}

struct CutMasks {
  std::vector<std::uint32_t> first;   // undirected: vertex mask; directed: tail
  std::vector<std::uint32_t> second;  // undirected: vertex mask; directed: head
  std::vector<double> weight;
};

inline CutMasks cut_masks(const UndirectedHypergraph& g) {
  CutMasks m;
  for (const Hyperedge& e : g.edges()) {
    std::uint32_t mask = 0;
    for (int v : e.vertices) mask |= (1u << v);
    m.first.push_back(mask);
    m.second.push_back(mask);
    m.weight.push_back(e.weight);
  }
  return m;
}

inline CutMasks cut_masks(const DirectedHypergraph& g) {
  CutMasks m;
  for (const Hyperarc& a : g.arcs()) {
    std::uint32_t tail = 0, head = 0;
    for (int v : a.tail) tail |= (1u << v);
    for (int v : a.head) head |= (1u << v);
    m.first.push_back(tail);
    m.second.push_back(head);
    m.weight.push_back(a.weight);
  }
  return m;
}

inline double masked_cut_weight(const CutMasks& m, std::uint32_t subset, std::uint32_t full) {
  const std::uint32_t complement = full & ~subset;
  double total = 0.0;
  for (std::size_t i = 0; i < m.weight.size(); ++i) {
    if ((m.first[i] & subset) != 0 && (m.second[i] & complement) != 0) total += m.weight[i];
  }
  return total;
}

template <class HypergraphT>
VerifyReport cut_check_impl(const HypergraphT& g, const HypergraphT& h, double eps) {
  const int n = g.vertex_count();
  if (h.vertex_count() != n) {
    throw std::invalid_argument("cut_check_exhaustive: vertex counts differ");
  }
  if (n > 22) {
    throw std::invalid_argument("cut_check_exhaustive: refusing 2^n enumeration beyond n = 22");
  }
  const CutMasks mg = cut_masks(g), mh = cut_masks(h);
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1u;

  VerifyReport report;
  RatioTracker ratios;
  for (std::uint32_t s = 0; s <= full; ++s) {
    const double kg = masked_cut_weight(mg, s, full);
    const double kh = masked_cut_weight(mh, s, full);
    ++report.checks_run;
    ratios.observe(kg, kh);
    if (!within_band(kg, kh, eps)) {
      report.passed = false;
      std::vector<int> subset;
      for (int v = 0; v < n; ++v) {
        if (s & (1u << v)) subset.push_back(v);
      }
      report.witness = std::move(subset);
      break;
    }
    if (s == full) break;  // avoid wrap at n = 32
  }
  ratios.finish(report);
  return report;
}

template <class HypergraphT>
VerifyReport spectral_check_impl(const HypergraphT& g, const HypergraphT& h, double eps,
                                 int trials, std::uint64_t rng_seed) {
  const int n = g.vertex_count();
  if (h.vertex_count() != n) {
    throw std::invalid_argument("spectral_check_random: vertex counts differ");
  }
  VerifyReport report;
  RatioTracker ratios;
  auto check_vector = [&](const Eigen::VectorXd& x) {
    const double qg = quadratic_form(g, x);
    const double qh = quadratic_form(h, x);
    ++report.checks_run;
    ratios.observe(qg, qh);
    if (!within_band(qg, qh, eps)) {
      report.passed = false;
      report.witness = x;
      return false;
    }
    return true;
  };

  for (int v = 0; v < n && report.passed; ++v) {
    check_vector(Eigen::VectorXd::Unit(n, v));
  }
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < trials && report.passed; ++t) {
    Eigen::VectorXd x(n);
    for (int v = 0; v < n; ++v) x(v) = normal(rng);
    if (!check_vector(x)) break;
    Eigen::VectorXd indicator(n);
    for (int v = 0; v < n; ++v) indicator(v) = (rng() & 1u) ? 1.0 : 0.0;
    if (!check_vector(indicator)) break;
  }
  ratios.finish(report);
  return report;
}

template <class HypergraphT>
VerifyReport certificate_check_impl(const HypergraphT& g, const HypergraphT& h, double eps) {
  const int n = g.vertex_count();
  if (h.vertex_count() != n) {
    throw std::invalid_argument("certificate_check_all_permutations: vertex counts differ");
  }
  if (n > 8) {
    throw std::invalid_argument(
        "certificate_check_all_permutations: refusing n! enumeration beyond n = 8");
  }
  VerifyReport report;
  RatioTracker ratios;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    const Permutation pi(order);
    const CrossingDegreeMatrix dg = crossing_degree_matrix(g, pi);
    const CrossingDegreeMatrix dh = crossing_degree_matrix(h, pi);
    for (int i = 1; i <= n - 1; ++i) {
      for (int j = i; j <= n - 1; ++j) {
        ++report.checks_run;
        ratios.observe(dg(i, j), dh(i, j));
        if (!within_band(dg(i, j), dh(i, j), eps)) {
          report.passed = false;
          report.witness = PermutationPositionWitness{pi, i, j};
          ratios.finish(report);
          return report;
        }
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  ratios.finish(report);
  return report;
}

template <class HypergraphT>
VerifyReport resistance_check_impl(const HypergraphT& g, const HypergraphT& h, double eps,
                                   const std::vector<std::pair<int, int>>& pairs,
                                   const SolverParams& params) {
  if (h.vertex_count() != g.vertex_count()) {
    throw std::invalid_argument("resistance_check: vertex counts differ");
  }
  constexpr double kSolverTol = 2e-3;
  VerifyReport report;
  RatioTracker ratios;
  for (const auto& [s, t] : pairs) {
    ++report.checks_run;
    bool unbounded_g = false, unbounded_h = false;
    double rg = 0.0, rh = 0.0;
    try {
      rg = effective_resistance(g, s, t, params).objective;
    } catch (const UnboundedError&) {
      unbounded_g = true;
    }
    try {
      rh = effective_resistance(h, s, t, params).objective;
    } catch (const UnboundedError&) {
      unbounded_h = true;
    }
    if (unbounded_g != unbounded_h) {
      report.passed = false;
      report.witness = std::vector<int>{s, t};
      break;
    }
    if (unbounded_g) continue;  // both unbounded: nothing to compare
    ratios.observe(rg, rh);
    const double tiny = 1e-12 * std::max(1.0, rh);
    const double lower = (1.0 - eps) * (1.0 - kSolverTol) * rh;
    const double upper = (1.0 + eps) * (1.0 + kSolverTol) * rh;
    if (!(lower - tiny <= rg && rg <= upper + tiny)) {
      report.passed = false;
      report.witness = std::vector<int>{s, t};
      break;
    }
  }
  ratios.finish(report);
  return report;
}

}  // namespace detail

// Exhaustive cut comparison over all 2^n subsets; exact up to floating-point
// slack. Fails with the first violating subset.
inline VerifyReport cut_check_exhaustive(const UndirectedHypergraph& g,
                                         const UndirectedHypergraph& h, double eps) {
  return detail::cut_check_impl(g, h, eps);
}

inline VerifyReport cut_check_exhaustive(const DirectedHypergraph& g, const DirectedHypergraph& h,
                                         double eps) {
  return detail::cut_check_impl(g, h, eps);
}

// Sampled necessary condition: singleton indicators, Gaussian vectors, and
// random subset indicators. Passing is evidence, not proof.
inline VerifyReport spectral_check_random(const UndirectedHypergraph& g,
                                          const UndirectedHypergraph& h, double eps, int trials,
                                          std::uint64_t rng_seed) {
  return detail::spectral_check_impl(g, h, eps, trials, rng_seed);
}

inline VerifyReport spectral_check_random(const DirectedHypergraph& g,
                                          const DirectedHypergraph& h, double eps, int trials,
                                          std::uint64_t rng_seed) {
  return detail::spectral_check_impl(g, h, eps, trials, rng_seed);
}

// Entrywise crossing-degree comparison of the collapses under every
// permutation. Passing certifies the sparsifier condition (entrywise
// nonnegativity implies copositivity of both difference matrices); failing
// is not a refutation.
inline VerifyReport certificate_check_all_permutations(const UndirectedHypergraph& g,
                                                       const UndirectedHypergraph& h, double eps) {
  return detail::certificate_check_impl(g, h, eps);
}

inline VerifyReport certificate_check_all_permutations(const DirectedHypergraph& g,
                                                       const DirectedHypergraph& h, double eps) {
  return detail::certificate_check_impl(g, h, eps);
}

// Compares effective resistances over the given vertex pairs within the
// (1 +- eps) bands, widened by a 2e-3 relative solver tolerance.
inline VerifyReport resistance_check(const UndirectedHypergraph& g, const UndirectedHypergraph& h,
                                     double eps, const std::vector<std::pair<int, int>>& pairs,
                                     const SolverParams& params = {}) {
  return detail::resistance_check_impl(g, h, eps, pairs, params);
}

inline VerifyReport resistance_check(const DirectedHypergraph& g, const DirectedHypergraph& h,
                                     double eps, const std::vector<std::pair<int, int>>& pairs,
                                     const SolverParams& params = {}) {
  return detail::resistance_check_impl(g, h, eps, pairs, params);
}

// Empirical check of the concentration bound driving the round counts: the
// frequency of |X - 1| >= 0.3 over scaled coin-flip sums must stay within
// 2 exp(-eps^2 K / 3) plus 3-sigma sampling slack. The observed frequency is
// reported as worst_ratio_high relative to that threshold.
inline VerifyReport concentration_selftest(int rounds, double p, int trials,
                                           std::uint64_t rng_seed) {
  if (rounds < 1) throw std::invalid_argument("concentration_selftest: rounds must be >= 1");
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::invalid_argument("concentration_selftest: p must lie in (0, 1]");
  }
  if (trials < 1) throw std::invalid_argument("concentration_selftest: trials must be >= 1");

  constexpr double kEps = 0.3;
  int deviations = 0;
  for (int t = 0; t < trials; ++t) {
    int hits = 0;
    for (int k = 0; k < rounds; ++k) {
      hits += coin_flip(rng_seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(k), p);
    }
    const double x = static_cast<double>(hits) / (static_cast<double>(rounds) * p);
    if (std::abs(x - 1.0) >= kEps) ++deviations;
  }
  const double freq = static_cast<double>(deviations) / trials;
  const double bound = std::min(1.0, 2.0 * std::exp(-kEps * kEps * rounds / 3.0));
  const double sigma = std::sqrt(bound * (1.0 - bound) / trials);
  const double threshold = bound + 3.0 * sigma;

  VerifyReport report;
  report.checks_run = trials;
  report.worst_ratio_low = 0.0;
  report.worst_ratio_high = freq / threshold;
  report.passed = freq <= threshold;
  if (!report.passed) report.witness = freq;
  return report;
}

}  // namespace hgsparse
