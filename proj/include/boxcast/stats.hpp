// Shared numerical kernels: differencing, correlograms (ACF/PACF), ordinary
// least squares on top of Eigen's QR, the Newey-West long-run variance, and
// the standard-normal distribution helpers used for intervals and p-values.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "boxcast/errors.hpp"
#include "boxcast/series.hpp"

namespace boxcast {

// ---------------------------------------------------------------------------
// Basic moments
// ---------------------------------------------------------------------------

inline double mean(const std::vector<double>& x) {
  if (x.empty()) throw InsufficientDataError("mean of empty vector");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// ---------------------------------------------------------------------------
// Standard normal distribution
// ---------------------------------------------------------------------------

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Wichura's AS 241 (PPND16): double-precision normal quantile.
// normal_quantile(0.975) = 1.959964 as used for the 95% bands.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ParameterError("normal_quantile: p must lie in (0,1)");
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

// ---------------------------------------------------------------------------
// Differencing
// ---------------------------------------------------------------------------

inline AnnualSeries difference(const AnnualSeries& s, int order) {
  if (order < 0) throw ParameterError("difference: order must be >= 0");
  if (order == 0) return s;
  if (static_cast<std::size_t>(order) >= s.size())
    throw InsufficientDataError(s.name + ": cannot difference " + std::to_string(order) +
                                " times a series of length " + std::to_string(s.size()));
  std::vector<double> v = s.values;
  for (int d = 0; d < order; ++d)
    for (std::size_t i = v.size() - 1; i >= 1; --i) v[i] -= v[i - 1];
  v.erase(v.begin(), v.begin() + order);
  AnnualSeries out = s;
  out.first_year += order;
  out.values = std::move(v);
  out.annotation = "Δ^" + std::to_string(order);
  return out;
}

// ---------------------------------------------------------------------------
// Correlogram (ACF by the biased estimator, PACF by Durbin-Levinson)
// ---------------------------------------------------------------------------

struct Correlogram {
  int n = 0;
  int max_lag = 0;
  std::vector<double> acf;   // index 0..max_lag, acf[0] == 1
  std::vector<double> pacf;  // index 0..max_lag, pacf[0] == 1 by convention
  double band = 0.0;         // ±1.959964/sqrt(n) white-noise band
};

inline int default_max_lag(int n) { return std::min(n / 2 - 1, 24); }

inline Correlogram correlogram(const AnnualSeries& s, int max_lag) {
  const int n = static_cast<int>(s.size());
  if (max_lag < 1) throw ParameterError("correlogram: max_lag must be >= 1");
  if (n < max_lag + 2)
    throw InsufficientDataError(s.name + ": need length >= max_lag + 2 (have " +
                                std::to_string(n) + ", max_lag " + std::to_string(max_lag) + ")");
  const double m = mean(s.values);
  double c0 = 0.0;
  for (double v : s.values) c0 += (v - m) * (v - m);
  c0 /= n;
  if (c0 <= 0.0) throw SingularError(s.name + ": zero-variance (constant) series");

  Correlogram cg;
  cg.n = n;
  cg.max_lag = max_lag;
  cg.band = 1.959964 / std::sqrt(static_cast<double>(n));
  cg.acf.assign(max_lag + 1, 0.0);
  cg.acf[0] = 1.0;
  for (int k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (int t = 0; t + k < n; ++t) ck += (s.values[t] - m) * (s.values[t + k] - m);
    cg.acf[k] = ck / n / c0;
  }

  // Durbin-Levinson recursion on the ACF.
  cg.pacf.assign(max_lag + 1, 0.0);
  cg.pacf[0] = 1.0;
  std::vector<double> phi(max_lag + 1, 0.0), prev(max_lag + 1, 0.0);
  for (int k = 1; k <= max_lag; ++k) {
    double num = cg.acf[k];
    double den = 1.0;
    for (int j = 1; j < k; ++j) {
      num -= prev[j] * cg.acf[k - j];
      den -= prev[j] * cg.acf[j];
    }
    if (std::fabs(den) < 1e-14)
      throw SingularError(s.name + ": Durbin-Levinson breakdown at lag " + std::to_string(k));
    phi[k] = num / den;
    for (int j = 1; j < k; ++j) phi[j] = prev[j] - phi[k] * prev[k - j];
    cg.pacf[k] = phi[k];
    prev = phi;
  }
  return cg;
}

// ---------------------------------------------------------------------------
// Ordinary least squares
// ---------------------------------------------------------------------------

struct RegressionFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd residuals;
  double rss = 0.0;
  int n = 0;
  int k = 0;
  // Classical residual variance s^2 = rss / (n - k).
  double s2() const { return rss / (n - k); }
};

inline RegressionFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(X.rows());
  const int k = static_cast<int>(X.cols());
  if (n < k) throw InsufficientDataError("ols: fewer rows than columns");
  if (X.rows() != y.rows()) throw ParameterError("ols: design/response size mismatch");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  // Rank decided relative to the largest diagonal of R (scale-aware).
  qr.setThreshold(1e-10);
  if (qr.rank() < k) throw SingularError("ols: rank-deficient design matrix");

  RegressionFit fit;
  fit.n = n;
  fit.k = k;
  fit.coefficients = qr.solve(y);
  fit.residuals = y - X * fit.coefficients;
  fit.rss = fit.residuals.squaredNorm();

  // (X'X)^{-1} from the factorization; s^2 guards against n == k exact fits.
  Eigen::MatrixXd xtx_inv = (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
  const double s2 = n > k ? fit.rss / (n - k) : 0.0;
  fit.standard_errors = (s2 * xtx_inv.diagonal()).cwiseMax(0.0).cwiseSqrt();
  return fit;
}

// ---------------------------------------------------------------------------
// Newey-West long-run variance (Bartlett kernel)
// ---------------------------------------------------------------------------

inline double newey_west_lrv(const std::vector<double>& resid, int lags) {
  const int n = static_cast<int>(resid.size());
  if (lags < 0) throw ParameterError("newey_west_lrv: lags must be >= 0");
  if (lags >= n)
    throw ParameterError("newey_west_lrv: lags (" + std::to_string(lags) +
                         ") must be below the sample size (" + std::to_string(n) + ")");
  double lrv = 0.0;
  for (double e : resid) lrv += e * e;
  lrv /= n;
  for (int j = 1; j <= lags; ++j) {
    double gj = 0.0;
    for (int t = j; t < n; ++t) gj += resid[t] * resid[t - j];
    gj /= n;
    lrv += 2.0 * (1.0 - static_cast<double>(j) / (lags + 1)) * gj;
  }
  return lrv;
}

}  // namespace boxcast
