#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "mdlcorr/types.hpp"

namespace mdlcorr {

/// One agglomeration step. Leaves are 0..N-1; the cluster created by merge k
/// has id N + k.
struct Merge {
  int a;
  int b;
  double height;
  int size;
};

struct Dendrogram {
  int n_leaves = 0;
  std::vector<Merge> merges;  ///< N - 1 entries, heights nondecreasing

  /// Partition obtained by applying the first N - q merges.
  Partition cut(int q) const;
};

/// Complete linkage (farthest point) on an arbitrary symmetric distance
/// matrix, via the nearest-neighbor chain algorithm.
Dendrogram complete_linkage(const Eigen::MatrixXd& distance);

/// Complete linkage on the correlation distance 1 - r.
Dendrogram build_dendrogram(const CorrelationMatrix& corr);

/// Within-cluster sum of squares of the columns of `features` (L x N) about
/// their cluster centroids.
double wcss(const Eigen::MatrixXd& features, const Partition& partition);

struct WcssCurve {
  std::vector<int> q;         ///< 1..q_max
  std::vector<double> wcss;   ///< WCSS(q) along the dendrogram cuts

  std::vector<double> normalized() const;
};

/// WCSS(q) for q = 1..q_max along the dendrogram cut sequence.
WcssCurve wcss_curve(const Dendrogram& dendrogram, const Eigen::MatrixXd& features, int q_max);

struct ElbowCut {
  Partition partition;
  WcssCurve curve;
  int q_star = 1;
  double peak_second_difference = 0.0;
  /// (WCSS(q*-1) - WCSS(q*)) / (WCSS(q*) - WCSS(q*+1)).
  double slope_ratio = 0.0;
  /// Peak second difference over the largest second difference elsewhere.
  double prominence = 0.0;
  /// Heuristic diagnostic: slope_ratio < kWeakSlopeRatio or
  /// prominence < kWeakProminence. Pure-noise curves stay below both.
  bool weak_elbow = false;
};

inline constexpr double kWeakSlopeRatio = 2.0;
inline constexpr double kWeakProminence = 1.5;

/// Selects q* maximizing WCSS(q-1) - 2 WCSS(q) + WCSS(q+1) over 2..q_max-1
/// (ties to the smaller q). WCSS is computed on the standardized columns of
/// `data`. Throws InvalidArgument if q_max < 3 or q_max > N.
ElbowCut cut_by_elbow(const Dendrogram& dendrogram, const DataMatrix& data, int q_max);

/// Default q_max: min(N, max(10, N / 5)).
int default_q_max(int n_features);

/// Correlation, dendrogram and elbow cut in one call.
ElbowCut hierarchical_clustering(const DataMatrix& data, int q_max);

/// CSV with header "a,b,height,size".
void write_merge_table(std::ostream& os, const Dendrogram& dendrogram);

}  // namespace mdlcorr
