#include "mdlcorr/types.hpp"

#include <algorithm>
#include <cmath>

#include "mdlcorr/errors.hpp"

namespace mdlcorr {

DataMatrix::DataMatrix(Eigen::MatrixXd v, std::vector<std::string> names)
    : values(std::move(v)), feature_names(std::move(names)) {
  if (feature_names.empty()) {
    feature_names.reserve(static_cast<std::size_t>(values.cols()));
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      feature_names.push_back("f" + std::to_string(j));
    }
  }
  if (static_cast<Eigen::Index>(feature_names.size()) != values.cols()) {
    throw InvalidArgument("feature name count does not match column count");
  }
}

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw InvalidArgument("correlation matrix must be square");
  }
  const Eigen::Index n = values_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values_(i, i) != 1.0) {
      throw InvalidArgument("correlation matrix diagonal must be exactly 1");
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = values_(i, j);
      if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
        throw InvalidArgument("correlation entry outside [-1, 1]");
      }
      if (v != values_(j, i)) {
        throw InvalidArgument("correlation matrix must be symmetric");
      }
    }
  }
}

Partition::Partition(std::vector<int> assignment) : assignment_(std::move(assignment)) {
  if (assignment_.empty()) {
    n_modules_ = 0;
    return;
  }
  const int max_label = *std::max_element(assignment_.begin(), assignment_.end());
  if (*std::min_element(assignment_.begin(), assignment_.end()) < 0) {
    throw InvalidArgument("partition labels must be non-negative");
  }
  std::vector<char> seen(static_cast<std::size_t>(max_label) + 1, 0);
  for (int a : assignment_) seen[static_cast<std::size_t>(a)] = 1;
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InvalidArgument("partition labels must be contiguous from 0");
  }
  n_modules_ = max_label + 1;
}

Partition Partition::canonical(const std::vector<int>& labels) {
  std::vector<int> out(labels.size());
  std::vector<int> remap;
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l < 0) throw InvalidArgument("partition labels must be non-negative");
    if (static_cast<std::size_t>(l) >= remap.size()) remap.resize(static_cast<std::size_t>(l) + 1, -1);
    if (remap[static_cast<std::size_t>(l)] < 0) remap[static_cast<std::size_t>(l)] = next++;
    out[i] = remap[static_cast<std::size_t>(l)];
  }
  return Partition(std::move(out));
}

Partition Partition::one_module(std::size_t n) { return Partition(std::vector<int>(n, 0)); }

Partition Partition::singletons(std::size_t n) {
  std::vector<int> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<int>(i);
  return Partition(std::move(a));
}

std::vector<std::size_t> Partition::module_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(n_modules_), 0);
  for (int a : assignment_) ++sizes[static_cast<std::size_t>(a)];
  return sizes;
}

bool Partition::same_clusters(const Partition& other) const {
  if (size() != other.size() || n_modules_ != other.n_modules_) return false;
  return canonical(assignment_).assignment_ == canonical(other.assignment_).assignment_;
}

}  // namespace mdlcorr
