// Augmented Dickey-Fuller and Phillips-Perron unit-root tests.
//
// Critical values are finite-sample interpolated Dickey-Fuller values: linear
// interpolation in the effective sample size over the classic Fuller tables
// (the convention econometrics packages print as "interpolated Dickey-Fuller").
// p-values use MacKinnon's (1994) response-surface polynomial approximation,
// accurate to roughly ±0.003.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "boxcast/errors.hpp"
#include "boxcast/series.hpp"
#include "boxcast/stats.hpp"

namespace boxcast {

enum class Deterministic { None, Constant, ConstantTrend };
enum class UnitRootTest { ADF, PP };

inline const char* to_string(Deterministic d) {
  switch (d) {
    case Deterministic::None: return "none";
    case Deterministic::Constant: return "constant";
    case Deterministic::ConstantTrend: return "trend";
  }
  return "none";
}

inline Deterministic deterministic_from_string(const std::string& s) {
  if (s == "none") return Deterministic::None;
  if (s == "constant") return Deterministic::Constant;
  if (s == "trend" || s == "constant+trend") return Deterministic::ConstantTrend;
  throw ParameterError("unknown deterministic spec: " + s);
}

struct CriticalValues {
  double cv1 = 0.0, cv5 = 0.0, cv10 = 0.0;
};

namespace detail {

struct DfTableRow {
  double n;  // sample size knot; last row is the asymptotic limit
  double cv1, cv5, cv10;
};

// Fuller's finite-sample tables for the tau statistic.
inline const std::array<DfTableRow, 6>& tau_table(Deterministic det) {
  static const std::array<DfTableRow, 6> none = {{{25, -2.66, -1.95, -1.60},
                                                  {50, -2.62, -1.95, -1.61},
                                                  {100, -2.60, -1.95, -1.61},
                                                  {250, -2.58, -1.95, -1.62},
                                                  {500, -2.58, -1.95, -1.62},
                                                  {1e18, -2.58, -1.95, -1.62}}};
  static const std::array<DfTableRow, 6> constant = {{{25, -3.75, -3.00, -2.63},
                                                      {50, -3.58, -2.93, -2.60},
                                                      {100, -3.51, -2.89, -2.58},
                                                      {250, -3.46, -2.88, -2.57},
                                                      {500, -3.44, -2.87, -2.57},
                                                      {1e18, -3.43, -2.86, -2.57}}};
  static const std::array<DfTableRow, 6> trend = {{{25, -4.38, -3.60, -3.24},
                                                   {50, -4.15, -3.50, -3.18},
                                                   {100, -4.04, -3.45, -3.15},
                                                   {250, -3.99, -3.43, -3.13},
                                                   {500, -3.98, -3.42, -3.13},
                                                   {1e18, -3.96, -3.41, -3.12}}};
  switch (det) {
    case Deterministic::None: return none;
    case Deterministic::Constant: return constant;
    case Deterministic::ConstantTrend: return trend;
  }
  return none;
}

// Fuller's tables for the normalized-bias statistic n(rho-1) (PP's Z(rho)).
inline const std::array<DfTableRow, 6>& rho_table(Deterministic det) {
  static const std::array<DfTableRow, 6> none = {{{25, -11.9, -7.3, -5.3},
                                                  {50, -12.9, -7.7, -5.5},
                                                  {100, -13.3, -7.9, -5.6},
                                                  {250, -13.6, -8.0, -5.7},
                                                  {500, -13.7, -8.0, -5.7},
                                                  {1e18, -13.8, -8.1, -5.7}}};
  static const std::array<DfTableRow, 6> constant = {{{25, -17.2, -12.5, -10.2},
                                                      {50, -18.9, -13.3, -10.7},
                                                      {100, -19.8, -13.7, -11.0},
                                                      {250, -20.3, -14.0, -11.2},
                                                      {500, -20.5, -14.0, -11.2},
                                                      {1e18, -20.7, -14.1, -11.3}}};
  static const std::array<DfTableRow, 6> trend = {{{25, -22.5, -17.9, -15.6},
                                                   {50, -25.7, -19.8, -16.8},
                                                   {100, -27.4, -20.7, -17.5},
                                                   {250, -28.4, -21.3, -17.9},
                                                   {500, -28.9, -21.5, -18.1},
                                                   {1e18, -29.5, -21.8, -18.3}}};
  switch (det) {
    case Deterministic::None: return none;
    case Deterministic::Constant: return constant;
    case Deterministic::ConstantTrend: return trend;
  }
  return none;
}

inline CriticalValues interpolate_df(const std::array<DfTableRow, 6>& table, int n) {
  if (n < 20) throw ParameterError("critical values: sample size must be >= 20");
  const double nn = static_cast<double>(n);
  if (nn <= table.front().n) {
    const auto& r = table.front();
    return {r.cv1, r.cv5, r.cv10};
  }
  // Beyond the last finite knot, interpolate linearly in 1/n toward the limit.
  if (nn >= table[4].n) {
    const auto& a = table[4];
    const auto& b = table[5];
    const double w = a.n / nn;  // 1 at n=500, -> 0 as n -> inf
    return {b.cv1 + (a.cv1 - b.cv1) * w, b.cv5 + (a.cv5 - b.cv5) * w,
            b.cv10 + (a.cv10 - b.cv10) * w};
  }
  for (std::size_t i = 0; i + 1 < table.size(); ++i) {
    if (nn <= table[i + 1].n) {
      const auto& a = table[i];
      const auto& b = table[i + 1];
      const double w = (nn - a.n) / (b.n - a.n);
      return {a.cv1 + w * (b.cv1 - a.cv1), a.cv5 + w * (b.cv5 - a.cv5),
              a.cv10 + w * (b.cv10 - a.cv10)};
    }
  }
  const auto& r = table.back();
  return {r.cv1, r.cv5, r.cv10};
}

}  // namespace detail

// Finite-sample critical values for the tau statistic at effective sample size n.
inline CriticalValues critical_values(Deterministic det, int n) {
  return detail::interpolate_df(detail::tau_table(det), n);
}

inline double critical_value(Deterministic det, int n, double level) {
  CriticalValues cv = critical_values(det, n);
  if (level == 0.01) return cv.cv1;
  if (level == 0.05) return cv.cv5;
  if (level == 0.10) return cv.cv10;
  throw ParameterError("unsupported significance level (use 0.01, 0.05 or 0.10)");
}

// Critical values for the normalized-bias statistic n(rho-1).
inline CriticalValues critical_values_rho(Deterministic det, int n) {
  return detail::interpolate_df(detail::rho_table(det), n);
}

// MacKinnon (1994) asymptotic p-value for a Dickey-Fuller tau statistic:
// p = Phi(polynomial(tau)), with a small-tau and a large-tau branch.
inline double mackinnon_pvalue(double tau, Deterministic det) {
  struct Branches {
    double tau_star, tau_min, tau_max;
    std::array<double, 3> small;
    std::array<double, 4> large;
  };
  static const Branches none = {-1.04, -19.04, 2.74,
                                {0.6344, 1.2378, 0.032496},
                                {0.4797, 0.93557, -0.06999, 0.033066}};
  static const Branches constant = {-1.61, -18.83, 2.74,
                                    {2.1659, 1.4412, 0.038269},
                                    {1.7339, 0.93202, -0.12745, -0.010368}};
  static const Branches trend = {-2.89, -16.18, 0.70,
                                 {3.2512, 1.6047, 0.049588},
                                 {2.5261, 0.61654, -0.37956, -0.060285}};
  const Branches& b = det == Deterministic::None      ? none
                      : det == Deterministic::Constant ? constant
                                                       : trend;
  if (tau > b.tau_max) return 1.0;
  if (tau < b.tau_min) return 0.0;
  double x;
  if (tau <= b.tau_star) {
    x = b.small[0] + tau * (b.small[1] + tau * b.small[2]);
  } else {
    x = b.large[0] + tau * (b.large[1] + tau * (b.large[2] + tau * b.large[3]));
  }
  double p = normal_cdf(x);
  return std::min(1.0, std::max(0.0, p));
}

struct UnitRootReport {
  UnitRootTest test = UnitRootTest::ADF;
  Deterministic deterministic = Deterministic::Constant;
  int lags_or_bandwidth = 0;
  double z_t = 0.0;
  std::optional<double> z_rho;  // PP only
  double p_value = 1.0;
  CriticalValues critical;
  bool reject_1 = false, reject_5 = false, reject_10 = false;
  int n = 0;  // effective regression sample size
  std::string series_label;

  bool reject_at(double level) const {
    if (level == 0.01) return reject_1;
    if (level == 0.05) return reject_5;
    if (level == 0.10) return reject_10;
    throw ParameterError("unsupported significance level (use 0.01, 0.05 or 0.10)");
  }
};

namespace detail {

// Shared builder for the Dickey-Fuller regression:
//   Δy_t = [c] + [δ·t] + (ρ-1)·y_{t-1} + Σ_j β_j Δy_{t-j} + e_t
struct DfRegression {
  RegressionFit fit;
  int n = 0;         // rows in the regression
  int rho_index = 0;  // column of y_{t-1}
};

inline DfRegression df_regression(const AnnualSeries& s, Deterministic det, int lags) {
  if (lags < 0) throw ParameterError("adf: lags must be >= 0");
  const int N = static_cast<int>(s.size());
  const int T = N - 1 - lags;
  const int ndet = det == Deterministic::None ? 0 : det == Deterministic::Constant ? 1 : 2;
  const int k = ndet + 1 + lags;
  if (T < k + 2)
    throw InsufficientDataError(s.label() + ": effective sample " + std::to_string(T) +
                                " too small for " + std::to_string(k) + " regressors");

  std::vector<double> dy(N - 1);
  for (int t = 1; t < N; ++t) dy[t - 1] = s.values[t] - s.values[t - 1];

  Eigen::MatrixXd X(T, k);
  Eigen::VectorXd y(T);
  for (int i = 0; i < T; ++i) {
    int col = 0;
    if (ndet >= 1) X(i, col++) = 1.0;
    if (ndet == 2) X(i, col++) = static_cast<double>(i + 1);
    X(i, col++) = s.values[lags + i];  // y_{t-1}
    for (int j = 1; j <= lags; ++j) X(i, col++) = dy[lags + i - j];
    y(i) = dy[lags + i];
  }

  DfRegression out;
  out.fit = ols(X, y);
  out.n = T;
  out.rho_index = ndet;

  // Perfectly deterministic inputs (e.g. y_t = t) leave no residual variance;
  // the t statistic would be 0/0, so refuse rather than emit NaN.
  double scale = y.squaredNorm() + 1.0;
  if (out.fit.rss <= 1e-16 * scale)
    throw SingularError(s.label() + ": degenerate unit-root regression (zero residual variance)");
  return out;
}

}  // namespace detail

inline UnitRootReport adf_test(const AnnualSeries& s, Deterministic det, int lags = 0) {
  detail::DfRegression r = detail::df_regression(s, det, lags);
  UnitRootReport rep;
  rep.test = UnitRootTest::ADF;
  rep.deterministic = det;
  rep.lags_or_bandwidth = lags;
  rep.n = r.n;
  rep.series_label = s.label();
  rep.z_t = r.fit.coefficients(r.rho_index) / r.fit.standard_errors(r.rho_index);
  rep.p_value = mackinnon_pvalue(rep.z_t, det);
  rep.critical = critical_values(det, r.n);
  rep.reject_1 = rep.z_t < rep.critical.cv1;
  rep.reject_5 = rep.z_t < rep.critical.cv5;
  rep.reject_10 = rep.z_t < rep.critical.cv10;
  return rep;
}

// Automatic ADF lag order: minimize the regression AIC over 0..max_lags with
// a common effective sample, mirroring the usual information-criterion option.
inline int adf_auto_lags(const AnnualSeries& s, Deterministic det, int max_lags) {
  if (max_lags < 0) throw ParameterError("adf_auto_lags: max_lags must be >= 0");
  int best_lag = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int L = 0; L <= max_lags; ++L) {
    AnnualSeries trimmed = s;  // drop early rows so every candidate sees the same sample
    if (L < max_lags) {
      trimmed.values.erase(trimmed.values.begin(), trimmed.values.begin() + (max_lags - L));
      trimmed.first_year += max_lags - L;
    }
    detail::DfRegression r = detail::df_regression(trimmed, det, L);
    double aic = r.n * std::log(r.fit.rss / r.n) + 2.0 * r.fit.k;
    if (aic < best_aic - 1e-12) {
      best_aic = aic;
      best_lag = L;
    }
  }
  return best_lag;
}

// Phillips-Perron: lags=0 Dickey-Fuller regression plus the nonparametric
// Newey-West correction, yielding both Z(rho) and Z(t).
inline UnitRootReport pp_test(const AnnualSeries& s, Deterministic det, int bandwidth = -1) {
  detail::DfRegression r = detail::df_regression(s, det, 0);
  const int n = r.n;
  if (bandwidth < 0) bandwidth = static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
  if (bandwidth >= n) throw ParameterError("pp: bandwidth must be below the sample size");

  const double rho_m1 = r.fit.coefficients(r.rho_index);
  const double se_rho = r.fit.standard_errors(r.rho_index);
  const double s2 = r.fit.s2();

  std::vector<double> resid(r.fit.residuals.data(), r.fit.residuals.data() + n);
  const double gamma0 = newey_west_lrv(resid, 0);
  const double lambda2 = newey_west_lrv(resid, bandwidth);

  const double t_rho = rho_m1 / se_rho;
  const double z_rho = n * rho_m1 - (n * n * se_rho * se_rho / s2) * (lambda2 - gamma0) / 2.0;
  const double z_t = std::sqrt(gamma0 / lambda2) * t_rho -
                     (lambda2 - gamma0) * n * se_rho / (2.0 * std::sqrt(lambda2) * std::sqrt(s2));

  UnitRootReport rep;
  rep.test = UnitRootTest::PP;
  rep.deterministic = det;
  rep.lags_or_bandwidth = bandwidth;
  rep.n = n;
  rep.series_label = s.label();
  rep.z_t = z_t;
  rep.z_rho = z_rho;
  rep.p_value = mackinnon_pvalue(z_t, det);
  rep.critical = critical_values(det, n);
  rep.reject_1 = z_t < rep.critical.cv1;
  rep.reject_5 = z_t < rep.critical.cv5;
  rep.reject_10 = z_t < rep.critical.cv10;
  return rep;
}

// Smallest d <= max_d whose d-th difference rejects the unit root at `level`.
inline int integration_order(const AnnualSeries& s, int max_d, Deterministic det,
                             double level = 0.05) {
  if (max_d < 0) throw ParameterError("integration_order: max_d must be >= 0");
  for (int d = 0; d <= max_d; ++d) {
    UnitRootReport rep = adf_test(difference(s, d), det, 0);
    if (rep.reject_at(level)) return d;
  }
  throw ConvergenceError(s.label() + ": no difference order <= " + std::to_string(max_d) +
                         " rejects the unit root at the " + std::to_string(level) + " level");
}

// Significance stars follow the report convention "*p<0.01, **p<0.05, ***p<0.001".
inline std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "*";
  if (p < 0.05) return "**";
  return "";
}

}  // namespace boxcast
