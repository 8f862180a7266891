#include "mdlcorr/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mdlcorr/errors.hpp"

namespace mdlcorr {

namespace {

constexpr int kMaxSeriesTerms = 200;
constexpr double kSeriesTolerance = 1e-14;
constexpr double kMinRho = 1e-6;
constexpr double kUpperLimit = 1.0 - 1e-9;
constexpr double kQuadratureTolerance = 1e-10;

void require_samples(int n_samples) {
  if (n_samples < 4) throw DomainError("the correlation density needs L >= 4 (got " + std::to_string(n_samples) + ")");
}

// ln of the density without the hypergeometric factor.
double log_density_core(double r, double rho, int n_samples) {
  const double l = n_samples;
  return std::log(l - 2.0) + std::lgamma(l - 1.0) - std::lgamma(l - 0.5) - 0.5 * std::log(2.0 * std::numbers::pi) +
         0.5 * (l - 1.0) * std::log1p(-rho * rho) + 0.5 * (l - 4.0) * std::log1p(-r * r) -
         0.5 * (2.0 * l - 3.0) * std::log1p(-rho * r);
}

double log_density(double r, double rho, int n_samples) {
  return log_density_core(r, rho, n_samples) + std::log(hyp2f1_half(n_samples, 0.5 * (rho * r + 1.0)));
}

double within_prefactor(const CorrDistParams& p) {
  const double n = p.n_features;
  return n / (n - 1.0) * (1.0 / p.n_clusters - 1.0 / n);
}

double outside_prefactor(const CorrDistParams& p) {
  const double n = p.n_features;
  return n / (n - 1.0) * (1.0 - 1.0 / p.n_clusters);
}

void check_r(double r) {
  if (!(std::abs(r) < 1.0)) throw DomainError("correlation argument must satisfy |r| < 1");
}

double simpson_recursive(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                         double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_recursive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recursive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

void CorrDistParams::validate() const {
  if (!(std::abs(rho) < 1.0)) throw InvalidArgument("rho must satisfy |rho| < 1");
  if (n_samples < 4) throw InvalidArgument("L must be at least 4");
  if (n_clusters < 2) throw InvalidArgument("q must be at least 2");
  if (n_features <= n_clusters) throw InvalidArgument("N must exceed q");
}

double LinkProbabilities::ratio() const {
  return p_in > 0.0 ? p_out / p_in : std::numeric_limits<double>::quiet_NaN();
}

double hyp2f1_half(int n_samples, double x) {
  require_samples(n_samples);
  if (!(x < 1.0) || !(x > -1.0)) throw DomainError("2F1 series requires |x| < 1");
  const double c = 0.5 * (2.0 * n_samples - 1.0);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    const double a = 0.5 + k;
    term *= a * a / ((c + k) * (k + 1.0)) * x;
    sum += term;
    if (std::abs(term) < kSeriesTolerance * std::abs(sum)) break;
  }
  return sum;
}

double corr_density(double r, double rho, int n_samples) {
  require_samples(n_samples);
  check_r(r);
  if (!(std::abs(rho) < 1.0)) throw DomainError("rho must satisfy |rho| < 1");
  return std::exp(log_density(r, rho, n_samples));
}

double null_density(double r, int n_samples) { return corr_density(r, 0.0, n_samples); }

double within_density_scaled(double r, const CorrDistParams& params) {
  params.validate();
  return within_prefactor(params) * corr_density(r, params.rho, params.n_samples);
}

double outside_density_scaled(double r, const CorrDistParams& params) {
  params.validate();
  return outside_prefactor(params) * null_density(r, params.n_samples);
}

double intersection_threshold(const CorrDistParams& params) {
  params.validate();
  if (params.rho < kMinRho) {
    throw NumericError("no intersection: within- and outside-cluster distributions coincide for rho ~ 0");
  }
  const double rho = params.rho;
  const double l = params.n_samples;
  const double q = params.n_clusters;
  const double n = params.n_features;
  const double e = 2.0 * l - 3.0;
  const double num = std::pow(1.0 - q / n, 2.0 / e) * std::pow(1.0 - rho * rho, (l - 1.0) / e);
  return 1.0 / rho - num / (rho * std::pow(q - 1.0, 2.0 / e));
}

double intersection_threshold_numeric(const CorrDistParams& params) {
  params.validate();
  if (params.rho < kMinRho) {
    throw NumericError("no intersection: within- and outside-cluster distributions coincide for rho ~ 0");
  }
  const double log_pre = std::log(within_prefactor(params)) - std::log(outside_prefactor(params));
  auto gap = [&](double r) {
    return log_pre + log_density(r, params.rho, params.n_samples) - log_density(r, 0.0, params.n_samples);
  };
  double lo = -1.0 + 1e-12;
  double hi = 1.0 - 1e-12;
  if (gap(lo) > 0.0 || gap(hi) < 0.0) throw NumericError("scaled densities do not cross on (-1, 1)");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

LinkProbabilities link_probabilities(const CorrDistParams& params, double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidArgument("offset epsilon must be non-negative");
  LinkProbabilities out;
  out.offset = epsilon;
  out.threshold_used = intersection_threshold(params) + epsilon;
  const double lo = std::max(out.threshold_used, -kUpperLimit);
  if (lo >= kUpperLimit) return out;
  auto split_at = [&](double mode) {
    std::vector<double> s;
    if (mode > lo && mode < kUpperLimit) s.push_back(mode);
    return s;
  };
  const double pin = within_prefactor(params);
  const double pout = outside_prefactor(params);
  out.p_in = integrate_adaptive_simpson(
      [&](double r) { return pin * corr_density(r, params.rho, params.n_samples); }, lo, kUpperLimit,
      kQuadratureTolerance, split_at(params.rho));
  out.p_out = integrate_adaptive_simpson([&](double r) { return pout * null_density(r, params.n_samples); }, lo,
                                         kUpperLimit, kQuadratureTolerance, split_at(0.0));
  return out;
}

double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                                  const std::vector<double>& splits) {
  if (!(b >= a)) throw InvalidArgument("integration bounds must satisfy a <= b");
  std::vector<double> edges{a};
  for (double s : splits) {
    if (s > edges.back() && s < b) edges.push_back(s);
  }
  edges.push_back(b);
  // Uniform starting panels keep narrow peaks from being skipped.
  constexpr int kPanels = 32;
  const double width = b - a;
  double total = 0.0;
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    const double step = (edges[e + 1] - edges[e]) / kPanels;
    for (int k = 0; k < kPanels; ++k) {
      const double x0 = edges[e] + k * step;
      const double x1 = k + 1 == kPanels ? edges[e + 1] : x0 + step;
      if (x1 <= x0) continue;
      const double f0 = f(x0);
      const double f1 = f(x1);
      const double fm = f(0.5 * (x0 + x1));
      const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
      const double panel_tol = width > 0.0 ? tol * (x1 - x0) / width : tol;
      total += simpson_recursive(f, x0, x1, f0, fm, f1, whole, panel_tol, 50);
    }
  }
  return total;
}

std::vector<DensityRow> density_table(const CorrDistParams& params, double step) {
  params.validate();
  if (!(step > 0.0 && step < 1.0)) throw InvalidArgument("density step must lie in (0, 1)");
  const auto count = static_cast<int>(std::floor(2.0 / step + 1e-9));
  std::vector<DensityRow> rows;
  rows.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k < count; ++k) {
    const double r = std::round((-1.0 + k * step) * 1e12) / 1e12;
    if (!(std::abs(r) < 1.0)) continue;
    rows.push_back({r, within_density_scaled(r, params), outside_density_scaled(r, params)});
  }
  return rows;
}

}  // namespace mdlcorr
