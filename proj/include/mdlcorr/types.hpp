#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mdlcorr {

/// L samples (rows) by N features (columns).
struct DataMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> feature_names;

  DataMatrix() = default;
  explicit DataMatrix(Eigen::MatrixXd v, std::vector<std::string> names = {});

  Eigen::Index n_samples() const { return values.rows(); }
  Eigen::Index n_features() const { return values.cols(); }
};

/// Symmetric N x N Pearson correlation estimate with unit diagonal.
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  /// Validates symmetry, diagonal and range; throws InvalidArgument otherwise.
  explicit CorrelationMatrix(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::Index size() const { return values_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

 private:
  Eigen::MatrixXd values_;
};

/// Node-to-module assignment with labels forming the contiguous range
/// [0, n_modules).
class Partition {
 public:
  Partition() = default;
  /// Throws InvalidArgument unless the labels are exactly 0..max.
  explicit Partition(std::vector<int> assignment);

  /// Relabels arbitrary non-negative labels in order of first appearance.
  static Partition canonical(const std::vector<int>& labels);
  static Partition one_module(std::size_t n);
  static Partition singletons(std::size_t n);

  const std::vector<int>& assignment() const { return assignment_; }
  std::size_t size() const { return assignment_.size(); }
  int n_modules() const { return n_modules_; }
  int operator[](std::size_t i) const { return assignment_[i]; }

  std::vector<std::size_t> module_sizes() const;

  /// Equality up to relabeling.
  bool same_clusters(const Partition& other) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assignment_;
  int n_modules_ = 0;
};

}  // namespace mdlcorr
