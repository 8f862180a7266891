#include <doctest.h>

#include <random>

#include "mdlcorr/errors.hpp"
#include "mdlcorr/evalmetrics.hpp"
#include "mdlcorr/parallel.hpp"
#include "oracles.hpp"

using namespace mdlcorr;

namespace {

std::vector<int> random_labels(std::size_t n, int k, Rng& rng) {
  std::uniform_int_distribution<int> d(0, k - 1);
  std::vector<int> out(n);
  for (int& x : out) x = d(rng);
  return Partition::canonical(out).assignment();
}

}  // namespace

TEST_SUITE("evalmetrics") {
  TEST_CASE("identical partitions score one") {
    const Partition p({0, 0, 1, 1, 2, 2, 2});
    CHECK(ami(p, p) == 1.0);
    CHECK(ami(p, Partition({2, 2, 0, 0, 1, 1, 1})) == 1.0);
    CHECK(ami(Partition::one_module(5), Partition::one_module(5)) == 1.0);
  }

  TEST_CASE("a one-module side scores zero") {
    const Partition p({0, 1, 0, 1, 2});
    CHECK(ami(Partition::one_module(5), p) == 0.0);
    CHECK(ami(p, Partition::one_module(5)) == 0.0);
  }

  TEST_CASE("length mismatch") {
    CHECK_THROWS_AS(ami(Partition::one_module(3), Partition::one_module(4)), InvalidArgument);
    CHECK_THROWS_AS(match_clusters_jaccard(Partition::one_module(3), Partition::one_module(4)), InvalidArgument);
  }

  TEST_CASE("contingency table") {
    const ContingencyTable t = contingency(Partition({0, 0, 1, 1}), Partition({0, 1, 1, 1}));
    CHECK(t.total == 4);
    CHECK(t.row_sums == std::vector<long>{2, 2});
    CHECK(t.col_sums == std::vector<long>{1, 3});
    REQUIRE(t.cells.size() == 3);
    CHECK(t.cells[1].row == 0);
    CHECK(t.cells[1].col == 1);
    CHECK(t.cells[1].count == 1);
  }

  TEST_CASE("AMI matches the brute-force hypergeometric oracle") {
    Rng rng(31);
    std::uniform_int_distribution<int> size(2, 30);
    std::uniform_int_distribution<int> clusters(2, 6);
    int compared = 0;
    while (compared < 100) {
      const auto n = static_cast<std::size_t>(size(rng));
      const auto u = random_labels(n, clusters(rng), rng);
      const auto v = random_labels(n, clusters(rng), rng);
      const Partition pu(u);
      const Partition pv(v);
      if (pu.n_modules() < 2 || pv.n_modules() < 2 || pu.same_clusters(pv)) continue;
      const oracle::Counts c = oracle::count(u, v);
      CHECK(std::abs(expected_mutual_information(contingency(pu, pv)) - oracle::expected_mutual_information(c)) <
            1e-10);
      CHECK(std::abs(mutual_information(contingency(pu, pv)) - oracle::mutual_information(c)) < 1e-10);
      CHECK(std::abs(ami(pu, pv) - oracle::ami(u, v)) < 1e-10);
      ++compared;
    }
  }

  TEST_CASE("AMI symmetry, relabeling and upper bound") {
    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
      const auto u = random_labels(25, 4, rng);
      const auto v = random_labels(25, 3, rng);
      const Partition pu(u);
      const Partition pv(v);
      const double a = ami(pu, pv);
      CHECK(std::abs(a - ami(pv, pu)) < 1e-12);
      std::vector<int> relabeled = v;
      for (int& x : relabeled) x = (x + 1) % pv.n_modules();
      CHECK(std::abs(a - ami(pu, Partition(relabeled))) < 1e-12);
      CHECK(a < 1.0);
    }
  }

  TEST_CASE("Jaccard matching") {
    const Partition ref({0, 0, 0, 0, 0, 1, 1, 1, 1, 1});
    for (bool f : match_clusters_jaccard(ref, ref)) CHECK(f);
    const auto moved = match_clusters_jaccard(ref, Partition({0, 0, 0, 0, 1, 1, 1, 1, 1, 1}));
    for (std::size_t i = 0; i < moved.size(); ++i) CHECK(moved[i] == (i != 4));
    CHECK(best_jaccard_match(ref, Partition({0, 0, 0, 0, 1, 1, 1, 1, 1, 1})) == std::vector<int>{0, 1});
  }

  TEST_CASE("Jaccard matching agrees with explicit set arithmetic") {
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
      const auto ref = random_labels(20, 1 + t % 5, rng);
      const auto cand = random_labels(20, 1 + (t / 5) % 6, rng);
      const auto flags = match_clusters_jaccard(Partition(ref), Partition(cand));
      CHECK(flags == oracle::jaccard_flags(ref, cand));
    }
  }
}
