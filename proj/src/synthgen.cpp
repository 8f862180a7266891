#include "mdlcorr/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mdlcorr/errors.hpp"
#include "mdlcorr/parallel.hpp"

namespace mdlcorr {

void BlockSpec::validate() const {
  if (n_features < 1) throw InvalidArgument("n_features must be positive");
  if (n_clusters < 1) throw InvalidArgument("n_clusters must be positive");
  if (n_clusters > n_features) {
    throw InvalidArgument("invalid spec: n_clusters (" + std::to_string(n_clusters) +
                          ") exceeds n_features (" + std::to_string(n_features) + ")");
  }
  if (!(rho >= 0.0 && rho < 1.0)) throw InvalidArgument("rho must lie in [0, 1)");
  if (n_samples < 3) throw InvalidArgument("n_samples must be at least 3");
}

namespace {

// Start offset of each block plus a sentinel at N.
std::vector<int> block_offsets(const BlockSpec& spec) {
  const int base = spec.n_features / spec.n_clusters;
  const int extra = spec.n_features % spec.n_clusters;
  std::vector<int> offsets(static_cast<std::size_t>(spec.n_clusters) + 1, 0);
  for (int b = 0; b < spec.n_clusters; ++b) {
    offsets[static_cast<std::size_t>(b) + 1] =
        offsets[static_cast<std::size_t>(b)] + base + (b < extra ? 1 : 0);
  }
  return offsets;
}

}  // namespace

Partition planted_partition(const BlockSpec& spec) {
  spec.validate();
  const auto offsets = block_offsets(spec);
  std::vector<int> labels(static_cast<std::size_t>(spec.n_features));
  for (int b = 0; b < spec.n_clusters; ++b) {
    for (int i = offsets[static_cast<std::size_t>(b)]; i < offsets[static_cast<std::size_t>(b) + 1]; ++i) {
      labels[static_cast<std::size_t>(i)] = b;
    }
  }
  return Partition(std::move(labels));
}

BlockModel build_block_covariance(const BlockSpec& spec) {
  Partition planted = planted_partition(spec);
  const Eigen::Index n = spec.n_features;
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && planted[static_cast<std::size_t>(i)] == planted[static_cast<std::size_t>(j)]) {
        sigma(i, j) = spec.rho;
      }
    }
  }
  return {std::move(sigma), std::move(planted)};
}

DataMatrix sample_data(const BlockSpec& spec, std::uint64_t seed) {
  spec.validate();
  const auto offsets = block_offsets(spec);
  const Eigen::Index samples = spec.n_samples;
  Eigen::MatrixXd x(samples, spec.n_features);
  const double shared = std::sqrt(spec.rho);
  const double own = std::sqrt(1.0 - spec.rho);

  for (int b = 0; b < spec.n_clusters; ++b) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd z(samples);
    for (Eigen::Index s = 0; s < samples; ++s) z(s) = normal(rng);
    for (int j = offsets[static_cast<std::size_t>(b)]; j < offsets[static_cast<std::size_t>(b) + 1]; ++j) {
      for (Eigen::Index s = 0; s < samples; ++s) {
        x(s, j) = shared * z(s) + own * normal(rng);
      }
    }
  }
  return DataMatrix(std::move(x));
}

Eigen::MatrixXd standardize_columns(const DataMatrix& data) {
  const Eigen::Index samples = data.n_samples();
  if (samples < 2) throw InvalidArgument("at least two samples are required");
  Eigen::MatrixXd z = data.values;
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    auto col = z.col(j);
    if (!col.allFinite()) throw InvalidArgument("non-finite value in column " + std::to_string(j));
    col.array() -= col.mean();
    const double ss = col.squaredNorm();
    if (!(ss > 0.0)) {
      const auto idx = static_cast<std::size_t>(j);
      throw DegenerateFeature(idx, idx < data.feature_names.size() ? data.feature_names[idx] : "");
    }
    col *= std::sqrt(static_cast<double>(samples - 1) / ss);
  }
  return z;
}

CorrelationMatrix sample_correlation(const DataMatrix& data) {
  const Eigen::MatrixXd z = standardize_columns(data);
  const Eigen::Index n = z.cols();
  Eigen::MatrixXd c(n, n);
  c.setZero();
  c.selfadjointView<Eigen::Upper>().rankUpdate(z.transpose(), 1.0 / static_cast<double>(z.rows() - 1));
  for (Eigen::Index i = 0; i < n; ++i) {
    c(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = std::clamp(c(i, j), -1.0, 1.0);
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return CorrelationMatrix(std::move(c));
}

DataMatrix select_samples(const DataMatrix& data, const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), data.n_features());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= data.n_samples()) throw InvalidArgument("sample index out of range");
    out.row(static_cast<Eigen::Index>(r)) = data.values.row(rows[r]);
  }
  return DataMatrix(std::move(out), data.feature_names);
}

}  // namespace mdlcorr
