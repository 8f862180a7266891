#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "mdlcorr/types.hpp"

namespace mdlcorr {

/// Planted block model: N features in q equal-size clusters, within-cluster
/// population correlation rho, L samples.
struct BlockSpec {
  int n_features = 0;
  int n_clusters = 1;
  double rho = 0.0;
  int n_samples = 0;

  /// Throws InvalidArgument on q > N, rho outside [0, 1), or L < 3.
  void validate() const;
};

struct BlockModel {
  Eigen::MatrixXd covariance;
  Partition planted;
};

/// Contiguous blocks; when q does not divide N the first N mod q blocks get
/// one extra node.
Partition planted_partition(const BlockSpec& spec);

BlockModel build_block_covariance(const BlockSpec& spec);

/// Draws X ~ N(0, Sigma) with one seeded sub-stream per block. Each column is
/// sqrt(rho) * z_block + sqrt(1 - rho) * eps_feature.
DataMatrix sample_data(const BlockSpec& spec, std::uint64_t seed);

/// Centers each column and scales it to unit sample standard deviation
/// (divisor L - 1). Throws DegenerateFeature on a constant column.
Eigen::MatrixXd standardize_columns(const DataMatrix& data);

/// Pearson correlation of all column pairs. Requires L >= 2.
CorrelationMatrix sample_correlation(const DataMatrix& data);

/// Keeps the rows listed in `rows`, in order.
DataMatrix select_samples(const DataMatrix& data, const std::vector<int>& rows);

}  // namespace mdlcorr
