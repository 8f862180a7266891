#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "density_cdf.hpp"
#include "mdlcorr/errors.hpp"
#include "mdlcorr/synthgen.hpp"
#include "oracles.hpp"

using namespace mdlcorr;

TEST_SUITE("synthgen") {
  TEST_CASE("block covariance for two blocks of two") {
    const BlockModel m = build_block_covariance({4, 2, 0.5, 10});
    Eigen::Matrix4d expected;
    expected << 1, .5, 0, 0, .5, 1, 0, 0, 0, 0, 1, .5, 0, 0, .5, 1;
    CHECK(m.covariance.isApprox(expected, 0.0));
    CHECK(m.planted.assignment() == std::vector<int>{0, 0, 1, 1});
  }

  TEST_CASE("singleton clusters give the identity") {
    const BlockModel m = build_block_covariance({3, 3, 0.7, 10});
    CHECK(m.covariance == Eigen::Matrix3d::Identity());
    CHECK(m.planted.assignment() == std::vector<int>{0, 1, 2});
  }

  TEST_CASE("remainder nodes go to the first blocks") {
    const Partition p = planted_partition({10, 3, 0.2, 10});
    CHECK(p.module_sizes() == std::vector<std::size_t>{4, 3, 3});
    CHECK(p.assignment() == std::vector<int>{0, 0, 0, 0, 1, 1, 1, 2, 2, 2});
  }

  TEST_CASE("invalid specs") {
    CHECK_THROWS_AS(build_block_covariance({3, 4, 0.2, 10}), InvalidArgument);
    CHECK_THROWS_AS(sample_data({4, 2, 1.0, 10}, 1), InvalidArgument);
    CHECK_THROWS_AS(sample_data({4, 2, -0.1, 10}, 1), InvalidArgument);
    CHECK_THROWS_AS(sample_data({4, 2, 0.2, 2}, 1), InvalidArgument);
  }

  TEST_CASE("smallest covariance eigenvalue is at least 1 - rho") {
    for (const BlockSpec& spec : {BlockSpec{12, 3, 0.2, 5}, BlockSpec{30, 4, 0.9, 5}, BlockSpec{17, 5, 0.5, 5},
                                  BlockSpec{8, 1, 0.99, 5}, BlockSpec{6, 6, 0.4, 5}}) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_block_covariance(spec).covariance);
      CHECK(es.eigenvalues().minCoeff() >= 1.0 - spec.rho - 1e-12);
    }
  }

  TEST_CASE("sampling is deterministic in the seed") {
    const BlockSpec spec{20, 4, 0.3, 50};
    const DataMatrix a = sample_data(spec, 42);
    const DataMatrix b = sample_data(spec, 42);
    const DataMatrix c = sample_data(spec, 43);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
  }

  TEST_CASE("independent columns have mean near zero") {
    const DataMatrix d = sample_data({5, 1, 0.0, 20000}, 3);
    for (Eigen::Index j = 0; j < d.n_features(); ++j) CHECK(std::abs(d.values.col(j).mean()) < 0.05);
  }

  TEST_CASE("within-block sample correlation averages to rho") {
    const BlockSpec spec{100, 2, 0.5, 10000};
    const CorrelationMatrix c = sample_correlation(sample_data(spec, 11));
    const Partition p = planted_partition(spec);
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index i = 0; i < 100; ++i) {
      for (Eigen::Index j = i + 1; j < 100; ++j) {
        if (p[static_cast<std::size_t>(i)] != p[static_cast<std::size_t>(j)]) continue;
        sum += c(i, j);
        ++count;
      }
    }
    CHECK(std::abs(sum / count - 0.5) < 0.01);
  }

  TEST_CASE("Pearson correlation by hand") {
    Eigen::MatrixXd x(3, 2);
    x << 1, 2, 2, 1, 3, 3;
    const CorrelationMatrix c = sample_correlation(DataMatrix(x));
    // Deviations (-1, 0, 1) and (0, -1, 1): cross sum 1 over sqrt(2 * 2).
    CHECK(c(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c(1, 0) == c(0, 1));
    CHECK(c(0, 0) == 1.0);
  }

  TEST_CASE("perfect positive and negative correlation") {
    Eigen::MatrixXd x(5, 3);
    x.col(0) << 1, 4, 2, 8, 5;
    x.col(1) = x.col(0);
    x.col(2) = -x.col(0);
    const CorrelationMatrix c = sample_correlation(DataMatrix(x));
    CHECK(c(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c(0, 2) == doctest::Approx(-1.0).epsilon(1e-15));
  }

  TEST_CASE("correlation output is symmetric with unit diagonal") {
    const CorrelationMatrix c = sample_correlation(sample_data({40, 3, 0.4, 12}, 5));
    CHECK(c.values() == c.values().transpose());
    for (Eigen::Index i = 0; i < c.size(); ++i) CHECK(c(i, i) == 1.0);
    CHECK(c.values().cwiseAbs().maxCoeff() <= 1.0);
  }

  TEST_CASE("zero-variance column names the column") {
    Eigen::MatrixXd x(4, 3);
    x << 1, 5, 2, 2, 5, 1, 3, 5, 7, 4, 5, 0;
    try {
      sample_correlation(DataMatrix(x, {"a", "flat", "c"}));
      FAIL("expected DegenerateFeature");
    } catch (const DegenerateFeature& e) {
      CHECK(e.column() == 1);
      CHECK(std::string(e.what()).find("flat") != std::string::npos);
    }
  }

  TEST_CASE("sample correlations follow the analytic densities") {
    // Many small independent draws so the entries are close to independent.
    constexpr int kL = 60;
    constexpr double kRho = 0.4;
    std::vector<double> within;
    std::vector<double> outside;
    for (std::uint64_t seed = 0; within.size() < 10000 || outside.size() < 10000; ++seed) {
      const BlockSpec spec{20, 2, kRho, kL};
      const CorrelationMatrix c = sample_correlation(sample_data(spec, seed));
      const Partition p = planted_partition(spec);
      for (Eigen::Index i = 0; i < 20; ++i) {
        for (Eigen::Index j = i + 1; j < 20; ++j) {
          auto& bucket = p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(j)] ? within : outside;
          if (bucket.size() < 10000) bucket.push_back(c(i, j));
        }
      }
    }
    const double ks_in = oracle::ks_statistic(within, DensityCdf(kRho, kL));
    const double ks_out = oracle::ks_statistic(outside, DensityCdf(0.0, kL));
    CHECK(ks_in < 0.05);
    CHECK(ks_out < 0.05);
    // The wrong density is clearly rejected.
    CHECK(oracle::ks_statistic(within, DensityCdf(0.0, kL)) > 0.05);
  }

  TEST_CASE("row selection keeps the listed samples") {
    const DataMatrix d = sample_data({6, 2, 0.3, 10}, 9);
    const DataMatrix s = select_samples(d, {7, 2, 4});
    REQUIRE(s.n_samples() == 3);
    CHECK(s.values.row(0) == d.values.row(7));
    CHECK(s.values.row(2) == d.values.row(4));
    CHECK(s.feature_names == d.feature_names);
  }
}
