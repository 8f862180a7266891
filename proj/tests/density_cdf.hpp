#pragma once

#include <algorithm>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mdlcorr/analytic.hpp"

// CDF of the correlation density on a fine grid, cell masses by
// Gauss-Kronrod, linear interpolation in between.
class DensityCdf {
 public:
  DensityCdf(double rho, int n_samples, int cells = 4000) : step_(2.0 / cells), cdf_(static_cast<std::size_t>(cells) + 1, 0.0) {
    auto f = [&](double r) { return mdlcorr::corr_density(r, rho, n_samples); };
    for (int k = 0; k < cells; ++k) {
      const double a = -1.0 + k * step_;
      const double b = k + 1 == cells ? 1.0 : a + step_;
      const double lo = std::max(a, -1.0 + 1e-15);
      const double hi = std::min(b, 1.0 - 1e-15);
      cdf_[static_cast<std::size_t>(k) + 1] =
          cdf_[static_cast<std::size_t>(k)] + boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi);
    }
  }

  double operator()(double r) const {
    const double x = (r + 1.0) / step_;
    const auto k = static_cast<std::size_t>(std::clamp(x, 0.0, static_cast<double>(cdf_.size() - 2)));
    const double t = x - static_cast<double>(k);
    return cdf_[k] + t * (cdf_[k + 1] - cdf_[k]);
  }

 private:
  double step_;
  std::vector<double> cdf_;
};
