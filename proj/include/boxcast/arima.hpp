// ARIMA(p,d,q) estimation, model selection and forecasting.
//
// The likelihood is the exact Gaussian likelihood of the d-times differenced
// series (conditioning on the first d observations), evaluated with a
// state-space Kalman filter in Harvey's companion form with the stationary
// initial covariance, and with sigma^2 concentrated out. Stationarity and
// invertibility are enforced by optimizing tanh/Levinson-transformed partial
// coefficients. Everything is deterministic: fixed starting points, fixed
// Nelder-Mead schedule, no RNG.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "boxcast/errors.hpp"
#include "boxcast/series.hpp"
#include "boxcast/stats.hpp"
#include "boxcast/unit_root.hpp"

namespace boxcast {

struct ArimaOrder {
  int p = 0, d = 0, q = 0;

  static constexpr int kMaxP = 5, kMaxD = 2, kMaxQ = 5;

  void validate() const {
    if (p < 0 || d < 0 || q < 0 || p > kMaxP || d > kMaxD || q > kMaxQ)
      throw ParameterError("order (" + str() + ") outside configured ceilings (p<=" +
                           std::to_string(kMaxP) + ", d<=" + std::to_string(kMaxD) +
                           ", q<=" + std::to_string(kMaxQ) + ")");
  }

  std::string str() const {
    return "(" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q) + ")";
  }

  friend bool operator==(const ArimaOrder& a, const ArimaOrder& b) {
    return a.p == b.p && a.d == b.d && a.q == b.q;
  }
  friend bool operator<(const ArimaOrder& a, const ArimaOrder& b) {
    return std::tie(a.p, a.d, a.q) < std::tie(b.p, b.d, b.q);
  }
};

enum class Method { CSS, ExactMLE };

inline const char* to_string(Method m) { return m == Method::CSS ? "css" : "exact-mle"; }

struct ArimaFit {
  ArimaOrder order;
  bool drift = false;
  std::vector<double> ar;  // phi_1..phi_p
  std::vector<double> ma;  // theta_1..theta_q
  double mu = 0.0;         // mean of the differenced series (0 when drift is off)
  double sigma2 = 0.0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  int n_eff = 0;
  std::vector<double> residuals;  // one-step innovations
  Method method = Method::ExactMLE;
  bool converged = false;
  bool degenerate = false;  // sigma2 == 0 (perfectly deterministic input)

  // Context carried for forecasting back on the original scale.
  std::string series_name;
  Unit unit = Unit::Dimensionless;
  int last_year = 0;
  std::vector<double> diff_tail;  // Δ^j y_T for j = 0..d-1
  std::vector<double> state;      // predicted state a_{T+1|T} of the ARMA part

  int k() const { return order.p + order.q + (drift ? 1 : 0) + 1; }  // + sigma^2
};

inline std::pair<double, double> information_criteria(const ArimaFit& fit) {
  if (!fit.converged) throw ParameterError("information_criteria: fit did not converge");
  return {fit.aic, fit.bic};
}

// ---------------------------------------------------------------------------
// Internals: parameter transform, Kalman filter, Nelder-Mead
// ---------------------------------------------------------------------------

namespace detail {

// tanh/Levinson map from unconstrained parameters to a stationary AR (or
// invertible MA) coefficient vector; the classic `partrans` of R's arima.
inline std::vector<double> partrans(const std::vector<double>& raw) {
  const std::size_t m = raw.size();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = std::tanh(raw[i]);
  std::vector<double> tmp(m);
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t k = 0; k < j; ++k) tmp[k] = out[k] - out[j] * out[j - k - 1];
    for (std::size_t k = 0; k < j; ++k) out[k] = tmp[k];
  }
  return out;
}

struct StateSpace {
  int p = 0, q = 0, r = 1;
  Eigen::MatrixXd T;    // r x r transition
  Eigen::VectorXd R;    // r   innovation loading
  Eigen::MatrixXd RRt;  // R R'
  Eigen::MatrixXd P0;   // stationary state covariance
  bool ok = false;
};

inline StateSpace build_state_space(const std::vector<double>& ar, const std::vector<double>& ma) {
  StateSpace ss;
  ss.p = static_cast<int>(ar.size());
  ss.q = static_cast<int>(ma.size());
  ss.r = std::max(ss.p, ss.q + 1);
  const int r = ss.r;

  ss.T = Eigen::MatrixXd::Zero(r, r);
  for (int i = 0; i < ss.p; ++i) ss.T(i, 0) = ar[i];
  for (int i = 0; i + 1 < r; ++i) ss.T(i, i + 1) = 1.0;

  ss.R = Eigen::VectorXd::Zero(r);
  ss.R(0) = 1.0;
  for (int j = 0; j < ss.q; ++j) ss.R(j + 1) = ma[j];
  ss.RRt = ss.R * ss.R.transpose();

  // Stationary covariance: solve (I - T⊗T) vec(P) = vec(RR').
  const int r2 = r * r;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(r2, r2);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) M(i + j * r, k + l * r) -= ss.T(i, k) * ss.T(j, l);
  Eigen::Map<const Eigen::VectorXd> rhs(ss.RRt.data(), r2);
  Eigen::VectorXd vecp = M.partialPivLu().solve(rhs);
  if (!vecp.allFinite()) return ss;
  ss.P0 = Eigen::Map<Eigen::MatrixXd>(vecp.data(), r, r);
  // Symmetrize against round-off.
  ss.P0 = ((ss.P0 + ss.P0.transpose()) / 2.0).eval();
  ss.ok = true;
  return ss;
}

struct KalmanRun {
  double ssq = 0.0;     // sum v_t^2 / F_t
  double sumlog = 0.0;  // sum log F_t
  std::vector<double> innov;
  Eigen::VectorXd state;  // a_{n+1|n}
  bool ok = false;
};

// Innovations filter on centered data x with sigma^2 concentrated out
// (F_t is the prediction variance in units of sigma^2).
inline KalmanRun kalman_filter(const StateSpace& ss, const std::vector<double>& x) {
  KalmanRun run;
  const int r = ss.r;
  Eigen::VectorXd a = Eigen::VectorXd::Zero(r);
  Eigen::MatrixXd P = ss.P0;
  run.innov.reserve(x.size());
  for (double xt : x) {
    const double F = P(0, 0);
    if (!(F > 1e-300) || !std::isfinite(F)) return run;
    const double v = xt - a(0);
    run.ssq += v * v / F;
    run.sumlog += std::log(F);
    run.innov.push_back(v);
    const Eigen::VectorXd TPz = ss.T * P.col(0);
    a = ss.T * a + TPz * (v / F);
    P = ss.T * P * ss.T.transpose() - (TPz * TPz.transpose()) / F + ss.RRt;
  }
  run.state = a;
  run.ok = run.state.allFinite() && std::isfinite(run.ssq) && std::isfinite(run.sumlog);
  return run;
}

// Profile log-likelihood with sigma^2 = ssq/n substituted back in.
inline double concentrated_loglik(double ssq, double sumlog, int n) {
  const double s2 = ssq / n;
  return -0.5 * n * (std::log(2.0 * M_PI * s2) + 1.0) - 0.5 * sumlog;
}

// Deterministic Nelder-Mead. Ties are broken by vertex index so repeated
// runs (and shuffled candidate orders upstream) can never diverge.
inline double nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          Eigen::VectorXd& x, double step, int max_iter, double ftol) {
  const int n = static_cast<int>(x.size());
  if (n == 0) return f(x);

  std::vector<Eigen::VectorXd> pt(n + 1, x);
  std::vector<double> fv(n + 1);
  for (int i = 1; i <= n; ++i) pt[i](i - 1) += step;
  for (int i = 0; i <= n; ++i) fv[i] = f(pt[i]);

  std::vector<int> idx(n + 1);
  for (int iter = 0; iter < max_iter; ++iter) {
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return fv[a] != fv[b] ? fv[a] < fv[b] : a < b;
    });
    const int best = idx[0], worst = idx[n], second = idx[n - 1];

    if (std::fabs(fv[worst] - fv[best]) <= ftol * (std::fabs(fv[best]) + ftol)) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += pt[i];
    centroid /= n;

    Eigen::VectorXd xr = centroid + (centroid - pt[worst]);
    double fr = f(xr);
    if (fr < fv[best]) {
      Eigen::VectorXd xe = centroid + 2.0 * (centroid - pt[worst]);
      double fe = f(xe);
      if (fe < fr) {
        pt[worst] = xe;
        fv[worst] = fe;
      } else {
        pt[worst] = xr;
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      pt[worst] = xr;
      fv[worst] = fr;
    } else {
      Eigen::VectorXd xc = centroid + 0.5 * (pt[worst] - centroid);
      double fc = f(xc);
      if (fc < fv[worst]) {
        pt[worst] = xc;
        fv[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          pt[i] = pt[best] + 0.5 * (pt[i] - pt[best]);
          fv[i] = f(pt[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i)
    if (fv[i] < fv[best]) best = i;
  x = pt[best];
  return fv[best];
}

inline double sample_sd(const std::vector<double>& w) {
  const double m = mean(w);
  double s = 0.0;
  for (double v : w) s += (v - m) * (v - m);
  return std::sqrt(s / std::max<std::size_t>(1, w.size() - 1));
}

// Conditional sum of squares with zero pre-sample residuals; accumulated
// from t = p onward.
inline double css_rss(const std::vector<double>& x, const std::vector<double>& ar,
                      const std::vector<double>& ma) {
  const int n = static_cast<int>(x.size());
  const int p = static_cast<int>(ar.size());
  const int q = static_cast<int>(ma.size());
  std::vector<double> e(n, 0.0);
  double rss = 0.0;
  for (int t = 0; t < n; ++t) {
    double pred = 0.0;
    for (int i = 0; i < p && i < t + 1; ++i)
      if (t - 1 - i >= 0) pred += ar[i] * x[t - 1 - i];
    for (int j = 0; j < q; ++j)
      if (t - 1 - j >= 0) pred += ma[j] * e[t - 1 - j];
    e[t] = x[t] - pred;
    if (t >= p) rss += e[t] * e[t];
  }
  return rss;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Estimation
// ---------------------------------------------------------------------------

inline ArimaFit fit(const AnnualSeries& series, ArimaOrder order, bool drift,
                    Method method = Method::ExactMLE) {
  order.validate();
  AnnualSeries ds = difference(series, order.d);
  const std::vector<double>& w = ds.values;
  const int n = static_cast<int>(w.size());
  if (n < order.p + order.q + 5)
    throw InsufficientDataError(series.name + ": need >= p+q+5 observations after " +
                                std::to_string(order.d) + "-fold differencing (have " +
                                std::to_string(n) + ")");

  ArimaFit out;
  out.order = order;
  out.drift = drift;
  out.method = method;
  out.n_eff = n;
  out.series_name = series.name;
  out.unit = series.unit;
  out.last_year = series.last_year();

  // Last value of each differencing stage, for undoing the differencing.
  {
    std::vector<double> stage = series.values;
    for (int j = 0; j < order.d; ++j) {
      out.diff_tail.push_back(stage.back());
      for (std::size_t i = stage.size() - 1; i >= 1; --i) stage[i] -= stage[i - 1];
      stage.erase(stage.begin());
    }
  }

  const double scale = [&] {
    double s = 0.0;
    for (double v : w) s += v * v;
    return s / n + 1.0;
  }();

  if (order.p == 0 && order.q == 0) {
    // Closed form. With drift: mu = sample mean and the regression variance
    // estimate (denominator n-1); without: mu = 0 and the ML variance (n).
    out.mu = drift ? mean(w) : 0.0;
    double rss = 0.0;
    for (double v : w) rss += (v - out.mu) * (v - out.mu);
    out.residuals.resize(n);
    for (int t = 0; t < n; ++t) out.residuals[t] = w[t] - out.mu;
    out.state.assign(1, 0.0);
    out.converged = true;
    if (rss <= 1e-14 * scale) {
      out.degenerate = true;
      out.sigma2 = 0.0;
      out.loglik = std::numeric_limits<double>::infinity();
      out.aic = -std::numeric_limits<double>::infinity();
      out.bic = -std::numeric_limits<double>::infinity();
      return out;
    }
    out.sigma2 = drift ? rss / (n - 1) : rss / n;
    out.loglik = -0.5 * n * std::log(2.0 * M_PI * out.sigma2) - rss / (2.0 * out.sigma2);
    out.aic = -2.0 * out.loglik + 2.0 * out.k();
    out.bic = -2.0 * out.loglik + out.k() * std::log(static_cast<double>(n));
    return out;
  }

  // Optimizer path. Layout of the unconstrained vector:
  //   [p raw AR | q raw MA | standardized mu (only if drift)]
  const int p = order.p, q = order.q;
  const double wbar = mean(w);
  const double wsd = std::max(detail::sample_sd(w), 1e-12);
  const int dim = p + q + (drift ? 1 : 0);
  const double big = 1e100;

  auto decode = [&](const Eigen::VectorXd& raw, std::vector<double>& ar, std::vector<double>& ma,
                    double& mu) {
    ar = detail::partrans(std::vector<double>(raw.data(), raw.data() + p));
    ma = detail::partrans(std::vector<double>(raw.data() + p, raw.data() + p + q));
    mu = drift ? wbar + raw(p + q) * wsd : 0.0;
  };

  auto center = [&](double mu) {
    std::vector<double> x(w);
    for (double& v : x) v -= mu;
    return x;
  };

  std::function<double(const Eigen::VectorXd&)> objective;
  if (method == Method::ExactMLE) {
    objective = [&](const Eigen::VectorXd& raw) -> double {
      std::vector<double> ar, ma;
      double mu;
      decode(raw, ar, ma, mu);
      detail::StateSpace ss = detail::build_state_space(ar, ma);
      if (!ss.ok) return big;
      detail::KalmanRun run = detail::kalman_filter(ss, center(mu));
      if (!run.ok || run.ssq <= 0.0) return big;
      return -detail::concentrated_loglik(run.ssq, run.sumlog, n);
    };
  } else {
    objective = [&](const Eigen::VectorXd& raw) -> double {
      std::vector<double> ar, ma;
      double mu;
      decode(raw, ar, ma, mu);
      double rss = detail::css_rss(center(mu), ar, ma);
      if (!std::isfinite(rss)) return big;
      return rss / scale;  // scaled to keep the simplex tolerances meaningful
    };
  }

  // Fixed multi-start plus deterministic polish restarts.
  Eigen::VectorXd best_x;
  double best_f = std::numeric_limits<double>::infinity();
  for (double s0 : {0.0, 0.1, -0.1}) {
    Eigen::VectorXd x = Eigen::VectorXd::Constant(dim, s0);
    if (drift) x(p + q) = 0.0;
    double f = detail::nelder_mead(objective, x, 0.1, 200 * dim * dim + 400, 1e-12);
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
  }
  if (!(best_f < big)) throw ConvergenceError(series.name + ": ARIMA" + order.str() +
                                              " likelihood evaluation failed everywhere");
  for (int restart = 0; restart < 3; ++restart) {
    Eigen::VectorXd x = best_x;
    double f = detail::nelder_mead(objective, x, 0.02, 200 * dim * dim + 400, 1e-13);
    if (f < best_f - 1e-12) {
      best_f = f;
      best_x = x;
    } else {
      best_x = x;
      best_f = std::min(best_f, f);
      break;
    }
  }

  decode(best_x, out.ar, out.ma, out.mu);

  // Report everything through one exact filter pass at the optimum (for CSS
  // this evaluates the exact likelihood at the CSS parameters).
  detail::StateSpace ss = detail::build_state_space(out.ar, out.ma);
  if (!ss.ok) throw ConvergenceError(series.name + ": stationary covariance solve failed");
  detail::KalmanRun run = detail::kalman_filter(ss, center(out.mu));
  if (!run.ok) throw ConvergenceError(series.name + ": Kalman filter failed at the optimum");

  out.sigma2 = run.ssq / n;
  out.loglik = detail::concentrated_loglik(run.ssq, run.sumlog, n);
  out.residuals = std::move(run.innov);
  out.state.assign(run.state.data(), run.state.data() + ss.r);
  out.converged = true;
  out.degenerate = out.sigma2 <= 1e-14 * scale;
  out.aic = -2.0 * out.loglik + 2.0 * out.k();
  out.bic = -2.0 * out.loglik + out.k() * std::log(static_cast<double>(n));
  return out;
}

// ---------------------------------------------------------------------------
// Forecasting
// ---------------------------------------------------------------------------

struct ForecastRow {
  int year = 0;
  double point = 0.0, lower = 0.0, upper = 0.0;
};

struct ForecastTable {
  std::vector<ForecastRow> rows;
  double level = 0.95;
  bool degenerate = false;
  std::string series_name;
};

// psi-weights of theta(B) / (phi(B) (1-B)^d), the MA(inf) representation on
// the undifferenced scale; forecast-error variance is sigma^2 * cumsum(psi^2).
inline std::vector<double> psi_weights(const ArimaFit& fit, int horizon) {
  const int p = fit.order.p, d = fit.order.d, q = fit.order.q;
  // Full AR polynomial phi(B)(1-B)^d as 1 - a_1 B - ... - a_{p+d} B^{p+d}.
  std::vector<double> c(p + 1, 0.0);
  c[0] = 1.0;
  for (int i = 0; i < p; ++i) c[i + 1] = -fit.ar[i];
  for (int j = 0; j < d; ++j) {
    std::vector<double> nc(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      nc[i] += c[i];
      nc[i + 1] -= c[i];
    }
    c = std::move(nc);
  }
  const int pd = static_cast<int>(c.size()) - 1;
  std::vector<double> a(pd);
  for (int i = 0; i < pd; ++i) a[i] = -c[i + 1];

  std::vector<double> psi(horizon, 0.0);
  for (int j = 1; j < horizon; ++j) {
    double v = j <= q ? fit.ma[j - 1] : 0.0;
    for (int i = 1; i <= std::min(j, pd); ++i) v += a[i - 1] * (j - i == 0 ? 1.0 : psi[j - i]);
    psi[j] = v;
  }
  if (horizon > 0) psi[0] = 1.0;
  return psi;
}

inline ForecastTable forecast(const ArimaFit& fit, int horizon, double level = 0.95) {
  if (!fit.converged) throw ParameterError("forecast: fit did not converge");
  if (horizon < 1) throw ParameterError("forecast: horizon must be >= 1");
  if (!(level > 0.0 && level < 1.0))
    throw ParameterError("forecast: confidence level must lie in (0,1)");

  const double z = normal_quantile(0.5 + level / 2.0);
  const std::vector<double> psi = psi_weights(fit, horizon);

  ForecastTable table;
  table.level = level;
  table.degenerate = fit.degenerate;
  table.series_name = fit.series_name;
  table.rows.reserve(horizon);

  // ARMA-part point forecasts via the state recursion, then drift, then
  // undo the differencing stage by stage.
  detail::StateSpace ss = detail::build_state_space(fit.ar, fit.ma);
  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(fit.state.data(),
                                                        static_cast<int>(fit.state.size()));
  std::vector<double> tails = fit.diff_tail;

  double var_accum = 0.0;
  for (int h = 1; h <= horizon; ++h) {
    const double what = a(0) + fit.mu;
    a = ss.T * a;

    double cur = what;
    for (int j = fit.order.d - 1; j >= 0; --j) {
      cur += tails[j];
      tails[j] = cur;
    }

    var_accum += psi[h - 1] * psi[h - 1];
    const double half = fit.degenerate ? 0.0 : z * std::sqrt(fit.sigma2 * var_accum);
    table.rows.push_back({fit.last_year + h, cur, cur - half, cur + half});
  }
  return table;
}

// ---------------------------------------------------------------------------
// Model selection
// ---------------------------------------------------------------------------

enum class DriftPolicy { Auto, Always, Never };

struct GridCell {
  ArimaOrder order;
  bool drift = false;
  double aic = std::numeric_limits<double>::quiet_NaN();
  double bic = std::numeric_limits<double>::quiet_NaN();
  bool ok = false;
  std::string status;  // "ok" or the failure reason
};

struct GridResult {
  std::vector<GridCell> candidates;  // sorted ascending by AIC, failures last
  ArimaOrder best_aic, best_bic;
  bool has_best = false;
};

namespace detail {

inline bool grid_cell_tie_less(const GridCell& a, const GridCell& b) {
  if (!(a.order == b.order)) return a.order < b.order;
  return a.drift < b.drift;
}

inline bool grid_cell_less(const GridCell& a, const GridCell& b) {
  if (a.ok != b.ok) return a.ok;
  if (!a.ok) return grid_cell_tie_less(a, b);
  auto params = [](const GridCell& c) { return c.order.p + c.order.q + (c.drift ? 1 : 0); };
  if (a.aic != b.aic) return a.aic < b.aic;
  if (params(a) != params(b)) return params(a) < params(b);
  if (a.bic != b.bic) return a.bic < b.bic;
  return grid_cell_tie_less(a, b);
}

inline bool grid_cell_bic_less(const GridCell& a, const GridCell& b) {
  if (a.ok != b.ok) return a.ok;
  if (!a.ok) return grid_cell_tie_less(a, b);
  auto params = [](const GridCell& c) { return c.order.p + c.order.q + (c.drift ? 1 : 0); };
  if (a.bic != b.bic) return a.bic < b.bic;
  if (params(a) != params(b)) return params(a) < params(b);
  if (a.aic != b.aic) return a.aic < b.aic;
  return grid_cell_tie_less(a, b);
}

}  // namespace detail

// Evaluate an explicit candidate list. The result is a pure function of the
// candidate *set*: cells are re-sorted with a total order, so permuting the
// input (or evaluating concurrently upstream) cannot change the outcome.
inline GridResult grid_search(const AnnualSeries& series,
                              const std::vector<std::pair<ArimaOrder, bool>>& candidates,
                              Method method = Method::ExactMLE) {
  GridResult result;
  result.candidates.reserve(candidates.size());
  for (const auto& [order, drift] : candidates) {
    GridCell cell;
    cell.order = order;
    cell.drift = drift;
    try {
      ArimaFit f = fit(series, order, drift, method);
      cell.aic = f.aic;
      cell.bic = f.bic;
      cell.ok = true;
      cell.status = "ok";
    } catch (const Error& e) {
      cell.status = e.what();
    }
    result.candidates.push_back(std::move(cell));
  }
  std::sort(result.candidates.begin(), result.candidates.end(), detail::grid_cell_less);
  if (!result.candidates.empty() && result.candidates.front().ok) {
    result.has_best = true;
    result.best_aic = result.candidates.front().order;
    result.best_bic =
        std::min_element(result.candidates.begin(), result.candidates.end(),
                         detail::grid_cell_bic_less)
            ->order;
  }
  return result;
}

// Exhaustive lattice search. Drift policy: Auto adds a constant only for
// d == 0 models; Always adds it everywhere; Never fits pure ARIMA throughout.
inline GridResult grid_search(const AnnualSeries& series, int p_max, int d_max, int q_max,
                              DriftPolicy policy = DriftPolicy::Auto,
                              Method method = Method::ExactMLE) {
  ArimaOrder{p_max, d_max, q_max}.validate();
  std::vector<std::pair<ArimaOrder, bool>> candidates;
  for (int d = 0; d <= d_max; ++d)
    for (int p = 0; p <= p_max; ++p)
      for (int q = 0; q <= q_max; ++q) {
        bool drift = policy == DriftPolicy::Always ||
                     (policy == DriftPolicy::Auto && d == 0);
        candidates.emplace_back(ArimaOrder{p, d, q}, drift);
      }
  return grid_search(series, candidates, method);
}

// Stepwise automatic selection. d comes from the ADF integration-order search
// (constant spec, 5%); drift candidates are considered only for d <= 1 (a
// drift under d = 2 would be a quadratic trend). Deterministic descent on AIC.
inline ArimaFit auto_fit(const AnnualSeries& series, int max_p = 5, int max_q = 5,
                         Method method = Method::ExactMLE) {
  if (series.size() < 10)
    throw InsufficientDataError(series.name + ": need at least 10 observations for auto selection");
  const int d = integration_order(series, 2, Deterministic::Constant, 0.05);
  const bool drift_allowed = d <= 1;

  std::map<std::tuple<int, int, bool>, double> seen;  // (p,q,drift) -> AIC
  std::optional<ArimaFit> best;

  auto eval = [&](int p, int q, bool drift) {
    if (p < 0 || q < 0 || p > max_p || q > max_q) return;
    if (drift && !drift_allowed) return;
    auto key = std::make_tuple(p, q, drift);
    if (seen.count(key)) return;
    double aic = std::numeric_limits<double>::infinity();
    try {
      ArimaFit f = fit(series, ArimaOrder{p, d, q}, drift, method);
      aic = f.aic;
      if (!best || aic < best->aic) best = std::move(f);
    } catch (const Error&) {
      // unusable candidate; remembered as +inf
    }
    seen[key] = aic;
  };

  for (auto [p, q] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
    eval(p, q, false);
    eval(p, q, true);
  }
  if (!best) throw ConvergenceError(series.name + ": no starting model could be fitted");

  while (true) {
    const int p = best->order.p, q = best->order.q;
    const bool dr = best->drift;
    const double current = best->aic;
    for (bool toggled : {dr, !dr}) {
      eval(p + 1, q, toggled);
      eval(p - 1, q, toggled);
      eval(p, q + 1, toggled);
      eval(p, q - 1, toggled);
    }
    eval(p, q, !dr);
    if (!(best->aic < current - 1e-10)) break;
  }
  return *best;
}

inline ArimaOrder auto_select(const AnnualSeries& series) { return auto_fit(series).order; }

}  // namespace boxcast
