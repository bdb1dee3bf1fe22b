#include <cmath>
#include <random>

#include "doctest.h"
#include "hgsparse/sparsify.hpp"
#include "hgsparse/verify.hpp"
#include "testutil.hpp"

using namespace hgsparse;

namespace {

UndirectedHypergraph scale_weights(const UndirectedHypergraph& g, double factor) {
  std::vector<Hyperedge> edges = g.edges();
  for (Hyperedge& e : edges) e.weight *= factor;
  return UndirectedHypergraph(g.vertex_count(), std::move(edges));
}

}  // namespace

TEST_SUITE_BEGIN("verify");

TEST_CASE("exhaustive cut check") {
  const UndirectedHypergraph g = testutil::random_undirected(6, 12, 4, 11);
  const VerifyReport same = cut_check_exhaustive(g, g, 0.0);
  CHECK(same.passed);
  CHECK(same.checks_run == 64);
  CHECK_FALSE(same.witness.has_value());
  CHECK(same.worst_ratio_low == doctest::Approx(1.0));
  CHECK(same.worst_ratio_high == doctest::Approx(1.0));

  const VerifyReport empty = cut_check_exhaustive(g, UndirectedHypergraph(6, {}), 0.3);
  CHECK_FALSE(empty.passed);
  REQUIRE(empty.witness.has_value());
  CHECK(std::holds_alternative<std::vector<int>>(*empty.witness));

  const UndirectedHypergraph one(2, {{{0, 1}, 1.0}});
  const UndirectedHypergraph bumped(2, {{{0, 1}, 1.05}});
  CHECK(cut_check_exhaustive(one, bumped, 0.1).passed);

  CHECK_THROWS_AS(cut_check_exhaustive(UndirectedHypergraph(23, {}), UndirectedHypergraph(23, {}), 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(cut_check_exhaustive(g, UndirectedHypergraph(5, {}), 0.1),
                  std::invalid_argument);
}

TEST_CASE("exhaustive cut check agrees with the definitional cut weight") {
  // the bitmask fast path inside the checker vs. the plain definition
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const int n = 5;
    const UndirectedHypergraph g = testutil::random_undirected(n, 10, 4, seed);
    const UndirectedHypergraph h = scale_weights(g, 1.01);
    const VerifyReport report = cut_check_exhaustive(g, h, 0.05);
    CHECK(report.passed);
    double low = std::numeric_limits<double>::infinity(), high = 0.0;
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
      const std::vector<int> subset = testutil::subset_from_mask(n, mask);
      const double kg = cut_weight(g, subset), kh = cut_weight(h, subset);
      if (kh > 1e-12) {
        low = std::min(low, kg / kh);
        high = std::max(high, kg / kh);
      }
    }
    CHECK(report.worst_ratio_low == doctest::Approx(low));
    CHECK(report.worst_ratio_high == doctest::Approx(high));
  }
}

TEST_CASE("randomized spectral check") {
  const DirectedHypergraph d = testutil::random_directed(6, 15, 3, 13);
  CHECK(spectral_check_random(d, d, 0.0, 50, 1).passed);

  const UndirectedHypergraph g = testutil::random_undirected(6, 15, 4, 13);
  const UndirectedHypergraph inflated = scale_weights(g, 1.3);  // (1 + 3 eps) for eps = 0.1
  const VerifyReport bad = spectral_check_random(g, inflated, 0.1, 20, 2);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness.has_value());
  CHECK(std::holds_alternative<Eigen::VectorXd>(*bad.witness));

  const UndirectedHypergraph one(2, {{{0, 1}, 1.0}});
  const UndirectedHypergraph bumped(2, {{{0, 1}, 1.05}});
  CHECK(spectral_check_random(one, bumped, 0.1, 100, 3).passed);

  // deterministic given the seed
  const VerifyReport a = spectral_check_random(g, scale_weights(g, 1.02), 0.1, 25, 9);
  const VerifyReport b = spectral_check_random(g, scale_weights(g, 1.02), 0.1, 25, 9);
  CHECK(a.worst_ratio_low == b.worst_ratio_low);
  CHECK(a.worst_ratio_high == b.worst_ratio_high);
}

TEST_CASE("all-permutations certificate") {
  const UndirectedHypergraph g = testutil::random_undirected(5, 10, 3, 17);
  CHECK(certificate_check_all_permutations(g, g, 0.0).passed);

  // an edge inflated by (1 + 2 eps) fails where it is the sole crosser
  const UndirectedHypergraph path(3, {{{0, 1}, 1.0}, {{1, 2}, 1.0}});
  const UndirectedHypergraph inflated(3, {{{0, 1}, 1.8}, {{1, 2}, 1.0}});
  const VerifyReport bad = certificate_check_all_permutations(path, inflated, 0.4);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness.has_value());
  const auto& witness = std::get<PermutationPositionWitness>(*bad.witness);
  CHECK(witness.i >= 1);
  CHECK(witness.j <= 2);

  CHECK_THROWS_AS(
      certificate_check_all_permutations(UndirectedHypergraph(9, {}), UndirectedHypergraph(9, {}), 0.1),
      std::invalid_argument);
}

TEST_CASE("certificate pass rate for sparsified instances") {
  int passes = 0;
  const UndirectedHypergraph g = testutil::random_undirected(6, 100, 3, 2024, false, true);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto [h, report] = sparsify(g, 0.4, seed, 0.2);
    passes += certificate_check_all_permutations(g, h, 0.4).passed;
  }
  CHECK(passes >= 14);  // theory: at least 16 of 20 in expectation
}

TEST_CASE("certificate soundness chain") {
  // whenever the certificate passes, the weaker checks pass as well
  const UndirectedHypergraph g = testutil::random_undirected(6, 80, 3, 31, false, true);
  const DirectedHypergraph d = testutil::random_directed(6, 80, 2, 31, false, true);
  int certified = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    {
      const auto [h, report] = sparsify(g, 0.4, seed, 0.2);
      if (certificate_check_all_permutations(g, h, 0.4).passed) {
        ++certified;
        CHECK(cut_check_exhaustive(g, h, 0.4).passed);
        CHECK(spectral_check_random(g, h, 0.4, 100, seed).passed);
      }
    }
    {
      const auto [h, report] = sparsify(d, 0.4, seed, 0.2);
      if (certificate_check_all_permutations(d, h, 0.4).passed) {
        ++certified;
        CHECK(cut_check_exhaustive(d, h, 0.4).passed);
        CHECK(spectral_check_random(d, h, 0.4, 100, seed).passed);
      }
    }
  }
  CHECK(certified >= 6);
}

TEST_CASE("resistance preservation check") {
  const UndirectedHypergraph path(3, {{{0, 1}, 1.0}, {{1, 2}, 1.0}});
  CHECK(resistance_check(path, path, 0.1, {{0, 2}, {0, 1}}).passed);

  const UndirectedHypergraph scaled(3, {{{0, 1}, 1.05}, {{1, 2}, 1.05}});
  CHECK(resistance_check(path, scaled, 0.1, {{0, 2}}).passed);

  const UndirectedHypergraph cutoff(3, {{{0, 1}, 1.0}});
  const VerifyReport broken = resistance_check(path, cutoff, 0.1, {{0, 2}});
  CHECK_FALSE(broken.passed);
  REQUIRE(broken.witness.has_value());
  CHECK(std::get<std::vector<int>>(*broken.witness) == std::vector<int>{0, 2});

  // both sides unbounded: nothing to compare, the pair is skipped
  const UndirectedHypergraph two(3, {{{0, 1}, 1.0}});
  CHECK(resistance_check(two, two, 0.1, {{0, 2}}).passed);
}

TEST_CASE("concentration selftest") {
  const VerifyReport run = concentration_selftest(300, 0.5, 10000, 5);
  CHECK(run.passed);
  CHECK(run.checks_run == 10000);
  CHECK(run.worst_ratio_high <= 1.0);

  const VerifyReport degenerate = concentration_selftest(1, 1.0, 1000, 5);
  CHECK(degenerate.passed);
  CHECK(degenerate.worst_ratio_high == 0.0);  // zero deviations

  // the theoretical bound is monotone decreasing in K
  auto bound = [](int k) { return 2.0 * std::exp(-0.09 * k / 3.0); };
  CHECK(bound(50) > bound(100));
  CHECK(bound(100) > bound(200));

  CHECK_THROWS_AS(concentration_selftest(0, 0.5, 100, 1), std::invalid_argument);
  CHECK_THROWS_AS(concentration_selftest(10, 1.5, 100, 1), std::invalid_argument);

  // deterministic given the seed
  CHECK(concentration_selftest(100, 0.4, 2000, 7).worst_ratio_high ==
        concentration_selftest(100, 0.4, 2000, 7).worst_ratio_high);
}

TEST_SUITE_END();
