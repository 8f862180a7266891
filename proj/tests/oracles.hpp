#pragma once

// Brute-force reference implementations. They share no code with the library
// and trade speed for obviousness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double plogp2(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

/// Map equation on the dense weight matrix W = A + gamma (off-diagonal).
inline double map_equation(const std::vector<std::vector<int>>& adj, double gamma, const std::vector<int>& labels) {
  const std::size_t n = adj.size();
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      w[i][j] = adj[i][j] + gamma;
      total += w[i][j];
    }
  }
  if (total <= 0.0) return 0.0;
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) p[i] += w[i][j] / total;
  }
  const int m = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<double> exit(static_cast<std::size_t>(m), 0.0);
  std::vector<double> flow(static_cast<std::size_t>(m), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    flow[static_cast<std::size_t>(labels[i])] += p[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (labels[i] != labels[j]) exit[static_cast<std::size_t>(labels[i])] += w[i][j] / total;
    }
  }
  double exit_sum = 0.0;
  for (double e : exit) exit_sum += e;
  double len = plogp2(exit_sum);
  for (int k = 0; k < m; ++k) {
    len -= 2.0 * plogp2(exit[static_cast<std::size_t>(k)]);
    len += plogp2(exit[static_cast<std::size_t>(k)] + flow[static_cast<std::size_t>(k)]);
  }
  for (double x : p) len -= plogp2(x);
  return len;
}

/// Calls fn on every set partition of n items as a restricted growth string.
inline void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int max_label) {
    if (i == n) {
      fn(a);
      return;
    }
    for (int k = 0; k <= max_label + 1; ++k) {
      a[static_cast<std::size_t>(i)] = k;
      rec(i + 1, std::max(max_label, k));
    }
  };
  if (n == 0) {
    fn(a);
    return;
  }
  a[0] = 0;
  rec(1, 0);
}

inline double min_map_equation(const std::vector<std::vector<int>>& adj, double gamma) {
  double best = std::numeric_limits<double>::infinity();
  for_each_partition(static_cast<int>(adj.size()),
                     [&](const std::vector<int>& labels) { best = std::min(best, map_equation(adj, gamma, labels)); });
  return best;
}

/// Exact binomial coefficients C(n, k) for n <= 60 by Pascal's rule.
inline double binom(int n, int k) {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(61, std::vector<double>(61, 0.0));
    for (int i = 0; i <= 60; ++i) {
      t[static_cast<std::size_t>(i)][0] = 1.0;
      for (int j = 1; j <= i; ++j) {
        t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
            (j <= i - 1 ? t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] : 0.0);
      }
    }
    return t;
  }();
  if (k < 0 || k > n) return 0.0;
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

struct Counts {
  std::vector<long> a;
  std::vector<long> b;
  std::map<std::pair<int, int>, long> cells;
  long n = 0;
};

inline Counts count(const std::vector<int>& u, const std::vector<int>& v) {
  Counts c;
  const int ku = *std::max_element(u.begin(), u.end()) + 1;
  const int kv = *std::max_element(v.begin(), v.end()) + 1;
  c.a.assign(static_cast<std::size_t>(ku), 0);
  c.b.assign(static_cast<std::size_t>(kv), 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    ++c.a[static_cast<std::size_t>(u[i])];
    ++c.b[static_cast<std::size_t>(v[i])];
    ++c.cells[{u[i], v[i]}];
  }
  c.n = static_cast<long>(u.size());
  return c;
}

inline double entropy(const std::vector<long>& sizes, long n) {
  double h = 0.0;
  for (long s : sizes) {
    if (s > 0) h -= static_cast<double>(s) / n * std::log(static_cast<double>(s) / n);
  }
  return h;
}

inline double mutual_information(const Counts& c) {
  double mi = 0.0;
  const double n = static_cast<double>(c.n);
  for (const auto& [key, nij] : c.cells) {
    const double a = static_cast<double>(c.a[static_cast<std::size_t>(key.first)]);
    const double b = static_cast<double>(c.b[static_cast<std::size_t>(key.second)]);
    mi += nij / n * std::log(n * nij / (a * b));
  }
  return mi;
}

/// E[MI] as the explicit sum over every cell value with hypergeometric
/// weights C(b, nij) C(n - b, a - nij) / C(n, a).
inline double expected_mutual_information(const Counts& c) {
  const int n = static_cast<int>(c.n);
  double e = 0.0;
  for (long a : c.a) {
    for (long b : c.b) {
      const int lo = std::max(1, static_cast<int>(a + b) - n);
      const int hi = static_cast<int>(std::min(a, b));
      for (int nij = lo; nij <= hi; ++nij) {
        const double prob = binom(static_cast<int>(b), nij) * binom(n - static_cast<int>(b), static_cast<int>(a) - nij) /
                            binom(n, static_cast<int>(a));
        e += prob * nij / n * std::log(static_cast<double>(n) * nij / (static_cast<double>(a) * b));
      }
    }
  }
  return e;
}

inline double ami(const std::vector<int>& u, const std::vector<int>& v) {
  const Counts c = count(u, v);
  const double mi = mutual_information(c);
  const double emi = expected_mutual_information(c);
  const double mean_h = 0.5 * (entropy(c.a, c.n) + entropy(c.b, c.n));
  return (mi - emi) / (mean_h - emi);
}

/// Complete linkage by exhaustive search over all active cluster pairs with
/// linkage recomputed from member distances. Returns merge heights in order
/// and the cluster memberships after each merge.
struct NaiveLinkage {
  std::vector<double> heights;
  std::vector<std::vector<int>> labels_after;  ///< labels_after[k]: N - k - 1 clusters
};

inline NaiveLinkage complete_linkage(const Eigen::MatrixXd& d) {
  const int n = static_cast<int>(d.rows());
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < n; ++i) clusters.push_back({i});
  NaiveLinkage out;
  while (clusters.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0;
    std::size_t bj = 1;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        double link = -std::numeric_limits<double>::infinity();
        for (int x : clusters[i]) {
          for (int y : clusters[j]) link = std::max(link, d(x, y));
        }
        if (link < best) {
          best = link;
          bi = i;
          bj = j;
        }
      }
    }
    clusters[bi].insert(clusters[bi].end(), clusters[bj].begin(), clusters[bj].end());
    clusters.erase(clusters.begin() + static_cast<long>(bj));
    out.heights.push_back(best);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      for (int x : clusters[c]) labels[static_cast<std::size_t>(x)] = static_cast<int>(c);
    }
    out.labels_after.push_back(labels);
  }
  return out;
}

/// Per-item match flags from explicit set intersections and unions.
inline std::vector<bool> jaccard_flags(const std::vector<int>& ref, const std::vector<int>& cand) {
  std::map<int, std::set<int>> rs;
  std::map<int, std::set<int>> cs;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    rs[ref[i]].insert(static_cast<int>(i));
    cs[cand[i]].insert(static_cast<int>(i));
  }
  std::map<int, int> best_of;
  for (const auto& [c, cset] : cs) {
    double best = -1.0;
    int arg = -1;
    for (const auto& [r, rset] : rs) {
      std::set<int> inter;
      std::set<int> uni;
      std::set_intersection(cset.begin(), cset.end(), rset.begin(), rset.end(), std::inserter(inter, inter.begin()));
      std::set_union(cset.begin(), cset.end(), rset.begin(), rset.end(), std::inserter(uni, uni.begin()));
      const double j = static_cast<double>(inter.size()) / static_cast<double>(uni.size());
      if (j > best) {
        best = j;
        arg = r;
      }
    }
    best_of[c] = arg;
  }
  std::vector<bool> flags(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) flags[i] = best_of[cand[i]] == ref[i];
  return flags;
}

/// One-sample Kolmogorov-Smirnov statistic of xs against a CDF.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return d;
}

}  // namespace oracle
