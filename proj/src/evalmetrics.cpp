#include "mdlcorr/evalmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "mdlcorr/errors.hpp"

namespace mdlcorr {

namespace {

void require_same_size(const Partition& u, const Partition& v) {
  if (u.size() != v.size()) {
    throw InvalidArgument("partitions cover different item counts (" + std::to_string(u.size()) + " vs " +
                          std::to_string(v.size()) + ")");
  }
}

double entropy(const std::vector<long>& sums, long total) {
  double h = 0.0;
  for (long s : sums) {
    if (s > 0) {
      const double p = static_cast<double>(s) / static_cast<double>(total);
      h -= p * std::log(p);
    }
  }
  return h;
}

// Distinct marginal values with multiplicities.
std::map<long, long> histogram(const std::vector<long>& sums) {
  std::map<long, long> h;
  for (long s : sums) ++h[s];
  return h;
}

}  // namespace

ContingencyTable contingency(const Partition& u, const Partition& v) {
  require_same_size(u, v);
  ContingencyTable t;
  t.total = static_cast<long>(u.size());
  t.row_sums.assign(static_cast<std::size_t>(u.n_modules()), 0);
  t.col_sums.assign(static_cast<std::size_t>(v.n_modules()), 0);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    pairs.emplace_back(u[i], v[i]);
    ++t.row_sums[static_cast<std::size_t>(u[i])];
    ++t.col_sums[static_cast<std::size_t>(v[i])];
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t k = 0; k < pairs.size();) {
    std::size_t e = k;
    while (e < pairs.size() && pairs[e] == pairs[k]) ++e;
    t.cells.push_back({pairs[k].first, pairs[k].second, static_cast<long>(e - k)});
    k = e;
  }
  return t;
}

double mutual_information(const ContingencyTable& t) {
  const double n = static_cast<double>(t.total);
  double mi = 0.0;
  for (const auto& c : t.cells) {
    const double nij = static_cast<double>(c.count);
    const double a = static_cast<double>(t.row_sums[static_cast<std::size_t>(c.row)]);
    const double b = static_cast<double>(t.col_sums[static_cast<std::size_t>(c.col)]);
    mi += nij / n * std::log(n * nij / (a * b));
  }
  return std::max(mi, 0.0);
}

double expected_mutual_information(const ContingencyTable& t) {
  const long n = t.total;
  if (n == 0) return 0.0;
  std::vector<double> log_fact(static_cast<std::size_t>(n) + 1, 0.0);
  for (long k = 2; k <= n; ++k) {
    log_fact[static_cast<std::size_t>(k)] = log_fact[static_cast<std::size_t>(k) - 1] + std::log(static_cast<double>(k));
  }
  auto lf = [&](long k) { return log_fact[static_cast<std::size_t>(k)]; };
  const double dn = static_cast<double>(n);

  double emi = 0.0;
  for (auto [a, ca] : histogram(t.row_sums)) {
    for (auto [b, cb] : histogram(t.col_sums)) {
      const double fixed = lf(a) + lf(b) + lf(n - a) + lf(n - b) - lf(n);
      double cell = 0.0;
      for (long nij = std::max(1L, a + b - n); nij <= std::min(a, b); ++nij) {
        const double x = static_cast<double>(nij);
        const double term = x / dn * std::log(dn * x / (static_cast<double>(a) * static_cast<double>(b)));
        const double log_p = fixed - lf(nij) - lf(a - nij) - lf(b - nij) - lf(n - a - b + nij);
        cell += term * std::exp(log_p);
      }
      emi += static_cast<double>(ca * cb) * cell;
    }
  }
  return emi;
}

double ami(const Partition& u, const Partition& v) {
  require_same_size(u, v);
  if (u.same_clusters(v)) return 1.0;
  if (u.n_modules() <= 1 || v.n_modules() <= 1) return 0.0;
  const ContingencyTable t = contingency(u, v);
  const double mi = mutual_information(t);
  const double emi = expected_mutual_information(t);
  const double mean_h = 0.5 * (entropy(t.row_sums, t.total) + entropy(t.col_sums, t.total));
  const double denom = mean_h - emi;
  if (std::abs(denom) < 1e-300) return 0.0;
  return (mi - emi) / denom;
}

std::vector<int> best_jaccard_match(const Partition& reference, const Partition& candidate) {
  const ContingencyTable t = contingency(reference, candidate);
  std::vector<int> match(static_cast<std::size_t>(candidate.n_modules()), -1);
  std::vector<double> best(match.size(), -1.0);
  // Cells are ordered by reference label, so strict > keeps the smaller label.
  for (const auto& c : t.cells) {
    const double inter = static_cast<double>(c.count);
    const double uni = static_cast<double>(t.row_sums[static_cast<std::size_t>(c.row)] +
                                           t.col_sums[static_cast<std::size_t>(c.col)]) - inter;
    const double j = inter / uni;
    const auto col = static_cast<std::size_t>(c.col);
    if (j > best[col]) {
      best[col] = j;
      match[col] = c.row;
    }
  }
  return match;
}

std::vector<bool> match_clusters_jaccard(const Partition& reference, const Partition& candidate) {
  const auto match = best_jaccard_match(reference, candidate);
  std::vector<bool> flags(reference.size());
  for (std::size_t i = 0; i < reference.size(); ++i) {
    flags[i] = match[static_cast<std::size_t>(candidate[i])] == reference[i];
  }
  return flags;
}

}  // namespace mdlcorr
