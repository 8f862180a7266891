#include "mdlcorr/hclust.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

#include "mdlcorr/errors.hpp"
#include "mdlcorr/io.hpp"
#include "mdlcorr/synthgen.hpp"

namespace mdlcorr {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void attach(int child, int root) { parent_[static_cast<std::size_t>(child)] = root; }

 private:
  std::vector<int> parent_;
};

}  // namespace

Dendrogram complete_linkage(const Eigen::MatrixXd& distance) {
  if (distance.rows() != distance.cols()) throw InvalidArgument("distance matrix must be square");
  const int n = static_cast<int>(distance.rows());
  Dendrogram out;
  out.n_leaves = n;
  if (n <= 1) return out;

  Eigen::MatrixXd d = distance;
  std::vector<char> active(static_cast<std::size_t>(n), 1);
  std::vector<int> size(static_cast<std::size_t>(n), 1);

  struct Raw {
    int x;
    int y;
    double h;
  };
  std::vector<Raw> raw;
  raw.reserve(static_cast<std::size_t>(n) - 1);
  std::vector<int> chain;
  chain.reserve(static_cast<std::size_t>(n));
  int remaining = n;
  int first_active = 0;

  while (remaining > 1) {
    if (chain.empty()) {
      while (!active[static_cast<std::size_t>(first_active)]) ++first_active;
      chain.push_back(first_active);
    }
    const int a = chain.back();
    const int prev = chain.size() >= 2 ? chain[chain.size() - 2] : -1;
    int b = prev;
    double best = prev >= 0 ? d(a, prev) : std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      if (k == a || !active[static_cast<std::size_t>(k)]) continue;
      if (d(a, k) < best) {
        best = d(a, k);
        b = k;
      }
    }
    if (b == prev) {
      chain.pop_back();
      chain.pop_back();
      // The merged cluster lives in slot `keep`.
      const int keep = std::min(a, b);
      const int drop = std::max(a, b);
      raw.push_back({a, b, best});
      for (int k = 0; k < n; ++k) {
        if (!active[static_cast<std::size_t>(k)] || k == keep || k == drop) continue;
        const double v = std::max(d(keep, k), d(drop, k));
        d(keep, k) = v;
        d(k, keep) = v;
      }
      active[static_cast<std::size_t>(drop)] = 0;
      size[static_cast<std::size_t>(keep)] += size[static_cast<std::size_t>(drop)];
      --remaining;
    } else {
      chain.push_back(b);
    }
  }

  std::stable_sort(raw.begin(), raw.end(), [](const Raw& l, const Raw& r) { return l.h < r.h; });
  UnionFind uf(2 * n - 1);
  std::vector<int> csize(static_cast<std::size_t>(2 * n - 1), 1);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const int xa = uf.find(raw[k].x);
    const int xb = uf.find(raw[k].y);
    const int id = n + static_cast<int>(k);
    uf.attach(xa, id);
    uf.attach(xb, id);
    csize[static_cast<std::size_t>(id)] = csize[static_cast<std::size_t>(xa)] + csize[static_cast<std::size_t>(xb)];
    out.merges.push_back({std::min(xa, xb), std::max(xa, xb), raw[k].h, csize[static_cast<std::size_t>(id)]});
  }
  return out;
}

Dendrogram build_dendrogram(const CorrelationMatrix& corr) {
  Eigen::MatrixXd dist = (1.0 - corr.values().array()).matrix();
  dist.diagonal().setZero();
  return complete_linkage(dist);
}

Partition Dendrogram::cut(int q) const {
  if (q < 1 || q > std::max(n_leaves, 1)) throw InvalidArgument("cut: cluster count out of range");
  const int n = n_leaves;
  UnionFind uf(2 * n - 1 > 0 ? 2 * n - 1 : 1);
  for (int k = 0; k < n - q; ++k) {
    const auto& m = merges[static_cast<std::size_t>(k)];
    uf.attach(uf.find(m.a), n + k);
    uf.attach(uf.find(m.b), n + k);
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = uf.find(i);
  return Partition::canonical(labels);
}

double wcss(const Eigen::MatrixXd& features, const Partition& partition) {
  if (static_cast<Eigen::Index>(partition.size()) != features.cols()) {
    throw InvalidArgument("partition size does not match the feature count");
  }
  const auto m = static_cast<Eigen::Index>(partition.n_modules());
  Eigen::MatrixXd centroid = Eigen::MatrixXd::Zero(features.rows(), m);
  const auto sizes = partition.module_sizes();
  for (Eigen::Index j = 0; j < features.cols(); ++j) centroid.col(partition[static_cast<std::size_t>(j)]) += features.col(j);
  for (Eigen::Index c = 0; c < m; ++c) centroid.col(c) /= static_cast<double>(sizes[static_cast<std::size_t>(c)]);
  double total = 0.0;
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    total += (features.col(j) - centroid.col(partition[static_cast<std::size_t>(j)])).squaredNorm();
  }
  return total;
}

std::vector<double> WcssCurve::normalized() const {
  const double top = wcss.empty() ? 0.0 : *std::max_element(wcss.begin(), wcss.end());
  std::vector<double> out(wcss.size(), 0.0);
  if (top > 0.0) {
    for (std::size_t k = 0; k < wcss.size(); ++k) out[k] = wcss[k] / top;
  }
  return out;
}

WcssCurve wcss_curve(const Dendrogram& dendrogram, const Eigen::MatrixXd& features, int q_max) {
  const int n = dendrogram.n_leaves;
  if (features.cols() != n) throw InvalidArgument("feature count does not match the dendrogram");
  if (q_max < 1 || q_max > n) throw InvalidArgument("q_max out of range");
  // Column sums of every cluster id; increments from merging a and b are
  // |a||b| / (|a| + |b|) * ||c_a - c_b||^2.
  Eigen::MatrixXd sums(features.rows(), 2 * n - 1);
  sums.leftCols(n) = features;
  std::vector<double> sz(static_cast<std::size_t>(2 * n - 1), 1.0);
  std::vector<double> by_q(static_cast<std::size_t>(n) + 1, 0.0);
  double current = 0.0;
  for (int k = 0; k < n - 1; ++k) {
    const auto& m = dendrogram.merges[static_cast<std::size_t>(k)];
    const double na = sz[static_cast<std::size_t>(m.a)];
    const double nb = sz[static_cast<std::size_t>(m.b)];
    const double inc = na * nb / (na + nb) * (sums.col(m.a) / na - sums.col(m.b) / nb).squaredNorm();
    current += inc;
    sums.col(n + k) = sums.col(m.a) + sums.col(m.b);
    sz[static_cast<std::size_t>(n + k)] = na + nb;
    by_q[static_cast<std::size_t>(n - k - 1)] = current;
  }
  WcssCurve curve;
  for (int q = 1; q <= q_max; ++q) {
    curve.q.push_back(q);
    curve.wcss.push_back(by_q[static_cast<std::size_t>(q)]);
  }
  return curve;
}

ElbowCut cut_by_elbow(const Dendrogram& dendrogram, const DataMatrix& data, int q_max) {
  if (q_max < 3) throw InvalidArgument("cannot detect an elbow with q_max < 3");
  if (q_max > dendrogram.n_leaves) throw InvalidArgument("q_max exceeds the number of features");
  const Eigen::MatrixXd z = standardize_columns(data);
  ElbowCut out;
  out.curve = wcss_curve(dendrogram, z, q_max);
  const auto& w = out.curve.wcss;
  double best = -std::numeric_limits<double>::infinity();
  for (int q = 2; q <= q_max - 1; ++q) {
    const auto i = static_cast<std::size_t>(q - 1);
    const double second = w[i - 1] - 2.0 * w[i] + w[i + 1];
    if (second > best) {
      best = second;
      out.q_star = q;
    }
  }
  out.peak_second_difference = best;
  double runner_up = -std::numeric_limits<double>::infinity();
  for (int q = 2; q <= q_max - 1; ++q) {
    if (q == out.q_star) continue;
    const auto i = static_cast<std::size_t>(q - 1);
    runner_up = std::max(runner_up, w[i - 1] - 2.0 * w[i] + w[i + 1]);
  }
  const auto k = static_cast<std::size_t>(out.q_star - 1);
  const double after = w[k] - w[k + 1];
  out.slope_ratio = after > 0.0 ? (w[k - 1] - w[k]) / after : std::numeric_limits<double>::infinity();
  out.prominence = runner_up > 0.0 ? best / runner_up : std::numeric_limits<double>::infinity();
  out.weak_elbow = out.slope_ratio < kWeakSlopeRatio || out.prominence < kWeakProminence;
  out.partition = dendrogram.cut(out.q_star);
  return out;
}

int default_q_max(int n_features) { return std::min(n_features, std::max(10, n_features / 5)); }

ElbowCut hierarchical_clustering(const DataMatrix& data, int q_max) {
  const CorrelationMatrix corr = sample_correlation(data);
  return cut_by_elbow(build_dendrogram(corr), data, q_max);
}

void write_merge_table(std::ostream& os, const Dendrogram& dendrogram) {
  os << "a,b,height,size\n";
  for (const auto& m : dendrogram.merges) {
    os << m.a << ',' << m.b << ',' << format_number(m.height) << ',' << m.size << '\n';
  }
}

}  // namespace mdlcorr
