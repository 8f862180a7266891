#pragma once

#include <cstdint>
#include <vector>

#include "mdlcorr/netbuild.hpp"
#include "mdlcorr/types.hpp"

namespace mdlcorr {

/// Stationary visit rates of the undirected random walk on observed links
/// plus the uniform prior: p_a = (deg(a) + gamma (N - 1)) / S.
/// Throws NumericError when there is no flow at all (no links, gamma = 0).
std::vector<double> visit_rates(const Graph& graph);

/// Two-level map equation in bits for `partition` over the prior-augmented
/// flow. Throws InvalidArgument if the partition does not cover the graph.
double codelength(const Graph& graph, const Partition& partition);

/// Codelength of the one-module partition, i.e. the entropy of the visit rates.
double one_module_codelength(const Graph& graph);

struct CodelengthReport {
  double threshold = 0.0;
  double d_one = 0.0;        ///< one-module codelength D1 (bits)
  double d_star = 0.0;       ///< best found codelength D* (bits)
  double compression = 0.0;  ///< (D1 - D*) / D1
  Partition partition;
};

/// Minimizes the map equation with seeded Louvain-style node moving,
/// repeated module aggregation and node-level fine-tuning. Returns the best of
/// `restarts` runs, never worse than the one-module partition.
CodelengthReport search(const Graph& graph, std::uint64_t seed, int restarts = 10);

struct SweepOptions {
  std::vector<double> tau_grid;
  std::uint64_t seed = 0;
  int restarts = 10;
  int threads = 1;
  SignMode sign = SignMode::Positive;
};

struct SweepResult {
  std::vector<CodelengthReport> records;  ///< ordered as the grid
  std::size_t best_index = 0;
  double tau_star = 0.0;
  Partition best_partition;
};

/// Evenly spaced grid [lo, hi] with the given step, endpoints snapped to
/// avoid accumulated rounding. Default is 0, 0.01, ..., 0.95.
std::vector<double> make_tau_grid(double lo = 0.0, double hi = 0.95, double step = 0.01);

/// Thresholds the correlations at every grid value, applies the prior,
/// searches, and selects tau* = argmax compression (ties to smaller tau).
/// Output is independent of the thread count.
SweepResult sweep(const CorrelationMatrix& corr, const SweepOptions& options);

}  // namespace mdlcorr
