#pragma once

#include <functional>
#include <vector>

namespace mdlcorr {

/// Parameters of the within/outside-cluster correlation distributions.
struct CorrDistParams {
  double rho = 0.0;
  int n_samples = 0;   ///< L >= 4
  int n_clusters = 2;  ///< q >= 2
  int n_features = 3;  ///< N > q

  void validate() const;
};

struct LinkProbabilities {
  double p_in = 0.0;
  double p_out = 0.0;
  double threshold_used = 0.0;  ///< r_i + offset
  double offset = 0.0;

  /// p_out / p_in; NaN when p_in is 0.
  double ratio() const;
};

/// Gauss hypergeometric 2F1(1/2, 1/2; (2L-1)/2; x) by direct series
/// summation. Requires L >= 4 and |x| < 1 (DomainError otherwise).
double hyp2f1_half(int n_samples, double x);

/// Hotelling density of the sample correlation r for population correlation
/// rho and L samples. |r| < 1 required.
double corr_density(double r, double rho, int n_samples);

/// corr_density with rho = 0.
double null_density(double r, int n_samples);

/// Within-cluster density scaled by the within-pair fraction:
/// N/(N-1) (1/q - 1/N) f(r; rho, L).
double within_density_scaled(double r, const CorrDistParams& params);

/// Outside-cluster density scaled by the across-pair fraction:
/// N/(N-1) (1 - 1/q) f0(r; L).
double outside_density_scaled(double r, const CorrDistParams& params);

/// Closed-form crossing of the scaled densities, valid when the
/// hypergeometric factor is close to 1. Throws NumericError when rho is
/// (numerically) zero.
double intersection_threshold(const CorrDistParams& params);

/// Crossing of the exact scaled densities found by bisection on (0, 1).
double intersection_threshold_numeric(const CorrDistParams& params);

/// Tail masses above r_i + epsilon of the scaled within/outside densities.
LinkProbabilities link_probabilities(const CorrDistParams& params, double epsilon = 0.0);

/// Adaptive Simpson integration of f over [a, b] to absolute tolerance `tol`,
/// with optional interior split points (e.g. the density mode).
double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                                  const std::vector<double>& splits = {});

struct DensityRow {
  double r;
  double f_hat;
  double f0_hat;
};

/// Scaled densities on r = -1 + k * step for k = 1 .. 2/step - 1.
std::vector<DensityRow> density_table(const CorrDistParams& params, double step = 0.001);

}  // namespace mdlcorr
