#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "hgsparse/ordered_graph.hpp"
#include "testutil.hpp"

using namespace hgsparse;

namespace {

// The running example: n = 3, edges {0,1} w=1, {0,2} w=2, {1,2} w=4.
Graph example_graph() { return Graph(3, {{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 4.0}}); }

// Threshold oracle straight from the definition: per edge, enumerate the
// crossed positions and take the minimum crossing degree over their square.
std::vector<double> threshold_oracle(const Graph& g, const Permutation& pi) {
  const CrossingDegreeMatrix cd = crossing_degree_matrix(g, pi);
  std::vector<double> probs;
  for (const GraphEdge& e : g.edges()) {
    double dmin = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= g.vertex_count() - 1; ++i) {
      for (int j = 1; j <= g.vertex_count() - 1; ++j) {
        if (edge_crosses(e, i, pi) && edge_crosses(e, j, pi)) {
          dmin = std::min(dmin, cd(i, j));
        }
      }
    }
    probs.push_back(e.weight / dmin);
  }
  return probs;
}

}  // namespace

TEST_SUITE_BEGIN("graph");

TEST_CASE("graph type enforces 2-uniformity") {
  CHECK_THROWS_AS(Graph(UndirectedHypergraph(3, {{{0, 1, 2}, 1.0}})), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, {{0, 0, 1.0}}), std::invalid_argument);
  const Graph g(3, {{2, 0, 1.5}});
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 2);
  CHECK(g.as_hypergraph().edges()[0].vertices == std::vector<int>{0, 2});
}

TEST_CASE("edge crossing predicate") {
  const Permutation id4 = Permutation::identity(4);
  const GraphEdge wide{0, 2, 1.0};  // ranks 1 and 3
  CHECK(edge_crosses(wide, 1, id4));
  CHECK(edge_crosses(wide, 2, id4));
  CHECK_FALSE(edge_crosses(wide, 3, id4));

  const GraphEdge mid{1, 2, 1.0};  // ranks 2 and 3
  CHECK_FALSE(edge_crosses(mid, 1, id4));
  CHECK(edge_crosses(mid, 2, id4));
  CHECK_FALSE(edge_crosses(mid, 3, id4));

  for (int k = 1; k <= 3; ++k) {
    const GraphEdge adjacent{k - 1, k, 1.0};  // ranks k and k+1
    for (int i = 1; i <= 3; ++i) CHECK(edge_crosses(adjacent, i, id4) == (i == k));
  }
}

TEST_CASE("crossing degrees") {
  const CrossingDegreeMatrix cd = crossing_degree_matrix(example_graph(), Permutation::identity(3));
  CHECK(cd(1, 1) == doctest::Approx(3.0));
  CHECK(cd(2, 2) == doctest::Approx(6.0));
  CHECK(cd(1, 2) == doctest::Approx(2.0));
  CHECK(cd(2, 1) == doctest::Approx(2.0));

  CHECK(crossing_degree_matrix(Graph(4, {}), Permutation::identity(4)).d.isZero(0.0));

  // an edge between the extreme ranks crosses everything
  const Graph span(5, {{0, 4, 2.5}});
  const Eigen::MatrixXd d = crossing_degree_matrix(span, Permutation::identity(5)).d;
  CHECK((d.array() == 2.5).all());
}

TEST_CASE("crossing incidence rows are contiguous blocks") {
  const Permutation id3 = Permutation::identity(3);
  const Graph g(3, {{0, 2, 1.0}, {0, 1, 1.0}});
  const Eigen::MatrixXd b = crossing_incidence(g, id3);
  CHECK(b.row(0) == Eigen::RowVector2d(1, 1));
  CHECK(b.row(1) == Eigen::RowVector2d(1, 0));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const Graph random = testutil::random_graph(n, 12, rng());
    const Permutation pi = testutil::random_permutation(n, rng);
    const Eigen::MatrixXd inc = crossing_incidence(random, pi);
    for (Eigen::Index row = 0; row < inc.rows(); ++row) {
      int transitions = 0;
      for (Eigen::Index col = 1; col < inc.cols(); ++col) {
        transitions += inc(row, col) != inc(row, col - 1);
      }
      CHECK(transitions <= 2);  // one contiguous block of ones
      CHECK(inc.row(row).sum() >= 1.0);
    }
  }
}

TEST_CASE("weighted incidence product equals the crossing degrees") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);  // up to 7
    const int m = 1 + static_cast<int>(rng() % 20);
    const Graph g = testutil::random_graph(n, m, rng());
    const Permutation pi = testutil::random_permutation(n, rng);
    const Eigen::MatrixXd b = crossing_incidence(g, pi);
    Eigen::VectorXd w(g.edges().size());
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      w(static_cast<Eigen::Index>(e)) = g.edges()[e].weight;
    }
    const Eigen::MatrixXd product = b.transpose() * w.asDiagonal() * b;
    CHECK((product - crossing_degree_matrix(g, pi).d).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("crossing thresholds") {
  const std::vector<double> probs =
      crossing_thresholds(example_graph(), Permutation::identity(3));
  CHECK(probs[0] == doctest::Approx(1.0 / 3.0));
  CHECK(probs[1] == doctest::Approx(1.0));
  CHECK(probs[2] == doctest::Approx(2.0 / 3.0));

  CHECK(crossing_thresholds(Graph(2, {{0, 1, 9.0}}), Permutation::identity(2))[0] ==
        doctest::Approx(1.0));

  // unit star centered at the rank-1 vertex, against the enumeration oracle
  std::vector<GraphEdge> star;
  const int n = 7;
  for (int v = 1; v < n; ++v) star.push_back({0, v, 1.0});
  const Graph star_graph(n, star);
  const Permutation id = Permutation::identity(n);
  const std::vector<double> got = crossing_thresholds(star_graph, id);
  const std::vector<double> want = threshold_oracle(star_graph, id);
  for (std::size_t e = 0; e < got.size(); ++e) CHECK(got[e] == doctest::Approx(want[e]));

  CHECK_THROWS_AS(crossing_thresholds(Graph(3, {}), Permutation::identity(3)),
                  std::invalid_argument);

  // thresholds always lie in (0, 1]
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = testutil::random_graph(5, 10, rng());
    const Permutation pi = testutil::random_permutation(5, rng);
    for (double p : crossing_thresholds(g, pi)) {
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("round count formula") {
  // frozen from a long-double evaluation of 3(ln 2 + ln C(n,2) + ln(1/delta))/eps^2
  const long double expected =
      std::ceil(3.0L * (std::log(2.0L) + std::log(15.0L) + std::log(5.0L)) / 0.16L);
  CHECK(graph_sample_rounds(6, 0.4, 0.2) == static_cast<int>(expected));
  CHECK(graph_sample_rounds(6, 0.4, 0.2) == 94);

  CHECK_THROWS_AS(graph_sample_rounds(6, 0.4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(graph_sample_rounds(6, 1.2, 0.5), std::invalid_argument);
}

TEST_CASE("round_sample keeps everything at probability one") {
  const Graph g = example_graph();
  const std::vector<double> ones(g.edges().size(), 1.0);
  CHECK(round_sample(g, 0.3, 0.3, ones, 5) == g);
  CHECK(round_sample(g, 0.3, 0.3, ones, 99) == g);
}

TEST_CASE("round_sample is deterministic and support-shrinking") {
  const Graph g = example_graph();
  const std::vector<double> probs{0.4, 0.9, 0.6};
  const Graph h1 = round_sample(g, 0.4, 0.3, probs, 123);
  const Graph h2 = round_sample(g, 0.4, 0.3, probs, 123);
  CHECK(h1 == h2);
  for (const GraphEdge& e : h1.edges()) {
    CHECK(e.weight > 0.0);
    bool found = false;
    for (const GraphEdge& orig : g.edges()) found |= (orig.u == e.u && orig.v == e.v);
    CHECK(found);
  }

  CHECK_THROWS_AS(round_sample(g, 0.4, 0.3, {0.5, 0.5}, 1), std::invalid_argument);
  CHECK_THROWS_AS(round_sample(g, 0.4, 0.3, {0.5, 0.0, 0.5}, 1), std::invalid_argument);
}

TEST_CASE("round_sample weights are unbiased") {
  const Graph g(2, {{0, 1, 1.0}});
  const std::vector<double> probs{0.5};
  const int runs = 10000;
  const int rounds = graph_sample_rounds(2, 0.5, 0.25);
  double sum = 0.0;
  for (int run = 0; run < runs; ++run) {
    const Graph h = round_sample(g, 0.5, 0.25, probs, 1000 + run);
    sum += h.edges().empty() ? 0.0 : h.edges()[0].weight;
  }
  const double mean = sum / runs;
  const double sigma = std::sqrt((1.0 - probs[0]) / (rounds * probs[0]) / runs);
  CHECK(std::abs(mean - 1.0) <= 3.0 * sigma);
}

TEST_CASE("collapse of undirected hyperedges") {
  const UndirectedHypergraph g(3, {{{0, 1, 2}, 1.5}});
  const Permutation pi({1, 0, 2});  // ranks: 1 -> 1, 0 -> 2, 2 -> 3
  const Graph collapsed = collapse(g, pi);
  REQUIRE(collapsed.edges().size() == 1);
  CHECK(collapsed.edges()[0] == GraphEdge{1, 2, 1.5});

  // a 2-vertex edge collapses to itself under any ordering
  std::mt19937_64 rng(9);
  const UndirectedHypergraph pair(4, {{{1, 3}, 2.0}});
  for (int trial = 0; trial < 10; ++trial) {
    const Permutation random_pi = testutil::random_permutation(4, rng);
    CHECK(collapse(pair, random_pi).edges()[0] == GraphEdge{1, 3, 2.0});
  }

  // singletons vanish
  CHECK(collapse(UndirectedHypergraph(2, {{{0}, 1.0}}), Permutation::identity(2)).edges().empty());
}

TEST_CASE("collapse of directed hyperarcs") {
  const Permutation id3 = Permutation::identity(3);
  CHECK(collapse(DirectedHypergraph(3, {{{2}, {0}, 1.0}}), id3).edges().empty());
  const Graph kept = collapse(DirectedHypergraph(3, {{{0}, {2}, 1.0}}), id3);
  REQUIRE(kept.edges().size() == 1);
  CHECK(kept.edges()[0] == GraphEdge{0, 2, 1.0});
}

TEST_CASE("collapse preserves the quadratic form on the sort cone") {
  std::mt19937_64 rng(29);
  const UndirectedHypergraph g = testutil::random_undirected(7, 25, 4, 5);
  const DirectedHypergraph d = testutil::random_directed(7, 25, 3, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::VectorXd x = testutil::gaussian_vector(7, rng);
    const Permutation pi = sort_permutation(x);
    CHECK(quadratic_form(g, x) ==
          doctest::Approx(quadratic_form(collapse(g, pi), x)).epsilon(1e-12));
    CHECK(quadratic_form(d, x) ==
          doctest::Approx(quadratic_form(collapse(d, pi), x)).epsilon(1e-12));
  }
}

TEST_CASE("fused crossing degrees match collapse then crossing degrees") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const UndirectedHypergraph g = testutil::random_undirected(n, 15, 4, rng());
    const DirectedHypergraph d = testutil::random_directed(n, 15, 3, rng());
    const Permutation pi = testutil::random_permutation(n, rng);
    CHECK((crossing_degree_matrix(g, pi).d - crossing_degree_matrix(collapse(g, pi), pi).d)
              .isZero(0.0));
    CHECK((crossing_degree_matrix(d, pi).d - crossing_degree_matrix(collapse(d, pi), pi).d)
              .isZero(0.0));
  }
}

TEST_CASE("sampling at the crossing thresholds certifies whp") {
  std::mt19937_64 rng(101);
  const double eps = 0.4, delta = 0.2;
  int certified = 0;
  const int runs = 50;
  for (int run = 0; run < runs; ++run) {
    const Graph g = testutil::random_graph(6, 12, 7000 + run);
    const Permutation pi = testutil::random_permutation(6, rng);
    const std::vector<double> probs = crossing_thresholds(g, pi);
    const Graph h = round_sample(g, eps, delta, probs, 9000 + run);
    const Eigen::MatrixXd dg = crossing_degree_matrix(g, pi).d;
    const Eigen::MatrixXd dh = crossing_degree_matrix(h, pi).d;
    bool ok = true;
    for (int i = 0; i < 5 && ok; ++i) {
      for (int j = 0; j < 5 && ok; ++j) {
        ok = (1.0 - eps) * dh(i, j) <= dg(i, j) + 1e-9 &&
             dg(i, j) <= (1.0 + eps) * dh(i, j) + 1e-9;
      }
    }
    certified += ok;
  }
  // theory promises at least 80% of runs; require 70%
  CHECK(certified >= 35);
}

TEST_SUITE_END();
