#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mdlcorr/errors.hpp"
#include "mdlcorr/netbuild.hpp"
#include "mdlcorr/synthgen.hpp"

using namespace mdlcorr;

namespace {

CorrelationMatrix small_corr() {
  Eigen::Matrix4d m;
  m << 1, 0.5, 0.2, -0.6,
       0.5, 1, 0.3, 0.1,
       0.2, 0.3, 1, 0.0,
       -0.6, 0.1, 0.0, 1;
  return CorrelationMatrix(m);
}

}  // namespace

TEST_SUITE("netbuild") {
  TEST_CASE("tau = 0 on positive correlations gives the complete graph") {
    Eigen::Matrix3d m;
    m << 1, 0.1, 0.2, 0.1, 1, 0.3, 0.2, 0.3, 1;
    const Graph g = threshold_graph(CorrelationMatrix(m), 0.0);
    CHECK(g.n_edges() == 3);
    CHECK(g.prior_weight() == 0.0);
  }

  TEST_CASE("threshold at the maximum leaves no edges") {
    CHECK(threshold_graph(small_corr(), 0.5).n_edges() == 0);
  }

  TEST_CASE("strict inequality and negative correlations") {
    const Graph g = threshold_graph(small_corr(), 0.0);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 3));
    CHECK_FALSE(g.has_edge(2, 3));  // exactly zero
    CHECK_FALSE(g.has_edge(0, 3));  // negative
    CHECK(g.n_edges() == 4);
    const Graph a = threshold_graph(small_corr(), 0.4, SignMode::Absolute);
    CHECK(a.has_edge(0, 3));
    CHECK(a.has_edge(0, 1));
    CHECK(a.n_edges() == 2);
  }

  TEST_CASE("edge sets shrink monotonically with tau") {
    const CorrelationMatrix c = sample_correlation(sample_data({60, 3, 0.3, 40}, 2));
    std::size_t prev = static_cast<std::size_t>(-1);
    Graph last = threshold_graph(c, 0.0);
    for (int k = 1; k <= 60; ++k) {
      const Graph g = threshold_graph(c, k / 100.0);
      CHECK(g.n_edges() <= prev);
      for (const auto& [i, j] : g.edge_list()) CHECK(last.has_edge(i, j));
      prev = g.n_edges();
      last = g;
    }
  }

  TEST_CASE("adjacency is symmetric and irreflexive") {
    const Graph g = threshold_graph(sample_correlation(sample_data({30, 2, 0.4, 30}, 4)), 0.1);
    for (int i = 0; i < g.n_nodes(); ++i) {
      CHECK_FALSE(g.has_edge(i, i));
      for (int j : g.neighbors(i)) CHECK(g.has_edge(j, i));
    }
  }

  TEST_CASE("graph construction") {
    const Graph g(4, {{0, 1}, {1, 0}, {2, 1}});
    CHECK(g.n_edges() == 2);
    CHECK(g.degree(1) == 2);
    CHECK(g.edge_list() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK_THROWS_AS(Graph(3, {{1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), InvalidArgument);
  }

  TEST_CASE("default prior") {
    CHECK(default_prior_weight(1000) == doctest::Approx(0.0069077553));
    double prev = default_prior_weight(3);
    for (int n = 4; n < 200; ++n) {
      CHECK(default_prior_weight(n) < prev);
      prev = default_prior_weight(n);
    }
    const Graph g = apply_prior(Graph(5, {{0, 1}}));
    CHECK(g.prior_weight() == doctest::Approx(std::log(5.0) / 5.0));
    CHECK(g.n_edges() == 1);
    CHECK_THROWS_AS(apply_prior(Graph(1, {})), InvalidArgument);
  }

  TEST_CASE("edge list export") {
    std::ostringstream os;
    write_edge_list(os, Graph(3, {{2, 0}, {1, 2}}));
    CHECK(os.str() == "node_i\tnode_j\n0\t2\n1\t2\n");
  }
}
