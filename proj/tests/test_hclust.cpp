#include <doctest.h>

#include <sstream>

#include "mdlcorr/errors.hpp"
#include "mdlcorr/evalmetrics.hpp"
#include "mdlcorr/hclust.hpp"
#include "mdlcorr/parallel.hpp"
#include "mdlcorr/synthgen.hpp"
#include "oracles.hpp"

using namespace mdlcorr;

TEST_SUITE("hclust") {
  TEST_CASE("perfectly correlated features merge first at height 0") {
    Eigen::MatrixXd x(6, 3);
    x.col(0) << 1, 3, 2, 5, 4, 6;
    x.col(1) = 2.0 * x.col(0);
    x.col(2) << 2, 1, 4, 3, 6, 5;
    const Dendrogram d = build_dendrogram(sample_correlation(DataMatrix(x)));
    REQUIRE(d.merges.size() == 2);
    CHECK(d.merges[0].a == 0);
    CHECK(d.merges[0].b == 1);
    CHECK(d.merges[0].height == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(d.merges[1].size == 3);
  }

  TEST_CASE("three-feature trace") {
    Eigen::Matrix3d r;
    r << 1, 0.9, 0.1, 0.9, 1, 0.1, 0.1, 0.1, 1;
    const Dendrogram d = build_dendrogram(CorrelationMatrix(r));
    REQUIRE(d.merges.size() == 2);
    CHECK(d.merges[0].height == doctest::Approx(0.1));
    CHECK(d.merges[1].height == doctest::Approx(0.9));
    CHECK(d.merges[1].a == 2);
    CHECK(d.merges[1].b == 3);
  }

  TEST_CASE("complete linkage matches the naive agglomeration") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const CorrelationMatrix c = sample_correlation(sample_data({20, 3, 0.3, 15}, seed));
      const Eigen::MatrixXd dist = (1.0 - c.values().array()).matrix();
      const Dendrogram d = build_dendrogram(c);
      Eigen::MatrixXd zero_diag = dist;
      zero_diag.diagonal().setZero();
      const auto naive = oracle::complete_linkage(zero_diag);
      REQUIRE(d.merges.size() == naive.heights.size());
      for (std::size_t k = 0; k < naive.heights.size(); ++k) {
        CHECK(std::abs(d.merges[k].height - naive.heights[k]) < 1e-10);
        const int q = static_cast<int>(naive.heights.size() - k);
        CHECK(d.cut(q).same_clusters(Partition::canonical(naive.labels_after[k])));
      }
    }
  }

  TEST_CASE("heights are nondecreasing") {
    const Dendrogram d = build_dendrogram(sample_correlation(sample_data({150, 6, 0.2, 40}, 3)));
    for (std::size_t k = 1; k < d.merges.size(); ++k) CHECK(d.merges[k].height >= d.merges[k - 1].height);
    CHECK(d.merges.back().size == 150);
  }

  TEST_CASE("wcss by hand") {
    Eigen::MatrixXd f(2, 5);
    f << 0, 2, 1, 1, 1,
         0, 0, 1, 3, 5;
    // Cluster {0,1}: centroid (1,0), 1 + 1. Cluster {2,3,4}: centroid (1,3), 4 + 0 + 4.
    CHECK(wcss(f, Partition({0, 0, 1, 1, 1})) == doctest::Approx(10.0));
    CHECK(wcss(f, Partition::singletons(5)) == 0.0);
    Eigen::MatrixXd same(3, 2);
    same << 1, 1, 2, 2, 7, 7;
    CHECK(wcss(same, Partition::one_module(2)) == 0.0);
    CHECK_THROWS_AS(wcss(f, Partition::one_module(4)), InvalidArgument);
  }

  TEST_CASE("incremental curve equals direct WCSS of each cut") {
    const DataMatrix data = sample_data({60, 4, 0.3, 30}, 12);
    const Dendrogram d = build_dendrogram(sample_correlation(data));
    const Eigen::MatrixXd z = standardize_columns(data);
    const WcssCurve curve = wcss_curve(d, z, 60);
    for (int q = 1; q <= 60; ++q) {
      const double direct = wcss(z, d.cut(q));
      CHECK(curve.wcss[static_cast<std::size_t>(q - 1)] == doctest::Approx(direct).epsilon(1e-10));
      if (q > 1) CHECK(curve.wcss[static_cast<std::size_t>(q - 1)] <= curve.wcss[static_cast<std::size_t>(q - 2)] + 1e-9);
    }
    const auto norm = curve.normalized();
    CHECK(norm.front() == 1.0);
    CHECK(norm.back() == 0.0);
  }

  TEST_CASE("elbow on near-noiseless blocks") {
    const BlockSpec spec{50, 5, 0.999, 50};
    const DataMatrix data = sample_data(spec, 1);
    const ElbowCut cut = hierarchical_clustering(data, 15);
    CHECK(cut.q_star == 5);
    CHECK(ami(planted_partition(spec), cut.partition) == 1.0);
    CHECK_FALSE(cut.weak_elbow);
  }

  TEST_CASE("pure noise raises the weak-elbow flag") {
    int weak = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const DataMatrix data = sample_data({200, 1, 0.0, 100}, seed);
      weak += hierarchical_clustering(data, default_q_max(200)).weak_elbow ? 1 : 0;
    }
    CHECK(weak == 10);
  }

  TEST_CASE("elbow arguments") {
    const DataMatrix data = sample_data({20, 2, 0.5, 20}, 2);
    const Dendrogram d = build_dendrogram(sample_correlation(data));
    CHECK_THROWS_AS(cut_by_elbow(d, data, 2), InvalidArgument);
    CHECK_THROWS_AS(cut_by_elbow(d, data, 21), InvalidArgument);
    CHECK(default_q_max(1000) == 200);
    CHECK(default_q_max(30) == 10);
    CHECK(default_q_max(8) == 8);
  }

  TEST_CASE("merge table") {
    Eigen::Matrix3d r;
    r << 1, 0.9, 0.1, 0.9, 1, 0.1, 0.1, 0.1, 1;
    std::ostringstream os;
    write_merge_table(os, build_dendrogram(CorrelationMatrix(r)));
    CHECK(os.str() == "a,b,height,size\n0,1,0.1,2\n2,3,0.9,3\n");
  }
}
