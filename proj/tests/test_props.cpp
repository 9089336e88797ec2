// Library-wide invariants: likelihood bookkeeping identities, forecast
// interval geometry, estimator cross-checks, Monte-Carlo calibration of the
// unit-root test, and determinism of model selection.

#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "boxcast/arima.hpp"
#include "boxcast/catalog.hpp"
#include "boxcast/stats.hpp"
#include "boxcast/unit_root.hpp"
#include "util.hpp"

using boxcast::AnnualSeries;
using boxcast::ArimaFit;
using boxcast::ArimaOrder;
using boxcast::Deterministic;
using boxcast::ForecastTable;
using boxcast::Method;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const AnnualSeries& fx() {
  static const AnnualSeries s = boxcast::catalog_get("exchange_rate_1971_2024");
  return s;
}
const AnnualSeries& gdp_sub() {
  static const AnnualSeries s = boxcast::catalog_get("gdp_rs_crore_1991_2025");
  return s;
}
}  // namespace

TEST_CASE("AIC and BIC identities hold for every converged fit") {
  int checked = 0;
  for (const AnnualSeries& s : {fx(), gdp_sub()}) {
    for (int p = 0; p <= 2; ++p) {
      for (int d = 0; d <= 2; ++d) {
        for (int q = 0; q <= 2; ++q) {
          for (bool drift : {false, true}) {
            ArimaFit f;
            try {
              f = boxcast::fit(s, ArimaOrder{p, d, q}, drift);
            } catch (const boxcast::Error&) {
              continue;  // non-fitting cells are exercised elsewhere
            }
            if (!f.converged || f.degenerate) continue;
            const int k = p + q + (drift ? 1 : 0) + 1;
            REQUIRE(f.k() == k);
            REQUIRE_THAT(f.aic, WithinAbs(-2.0 * f.loglik + 2.0 * k, 1e-8));
            REQUIRE_THAT(f.bic,
                         WithinAbs(-2.0 * f.loglik + k * std::log(f.n_eff), 1e-8));
            REQUIRE_THAT(f.bic - f.aic,
                         WithinAbs(k * (std::log(f.n_eff) - 2.0), 1e-8));
            ++checked;
          }
        }
      }
    }
  }
  REQUIRE(checked > 80);  // the lattice really was walked
}

TEST_CASE("BIC minus AIC spot values at the published sample sizes") {
  // Random-walk fits with one parameter: the gap is exactly ln(n) - 2.
  AnnualSeries rw55 = testutil::make_series(1970, testutil::random_walk(17u, 55));
  ArimaFit f54 = boxcast::fit(rw55, {0, 1, 0}, false);
  REQUIRE(f54.n_eff == 54);
  REQUIRE_THAT(f54.bic - f54.aic, WithinAbs(1.989, 0.001));

  AnnualSeries rw62 = testutil::make_series(1962, testutil::random_walk(18u, 62));
  ArimaFit f61 = boxcast::fit(rw62, {0, 1, 0}, false);
  REQUIRE(f61.n_eff == 61);
  REQUIRE_THAT(f61.bic - f61.aic, WithinAbs(2.111, 0.001));
}

TEST_CASE("random-walk forecast intervals scale with the square root of the horizon") {
  for (bool drift : {true, false}) {
    ArimaFit f = boxcast::fit(fx(), {0, 1, 0}, drift);
    ForecastTable t = boxcast::forecast(f, 23);
    const double w1 = t.rows[0].upper - t.rows[0].lower;
    for (std::size_t h = 1; h <= t.rows.size(); ++h) {
      const double wh = t.rows[h - 1].upper - t.rows[h - 1].lower;
      REQUIRE_THAT(wh / w1, WithinAbs(std::sqrt(static_cast<double>(h)), 1e-9));
    }
  }

  SECTION("pinned half-widths at the first two horizons") {
    ArimaFit f = boxcast::fit(fx(), {0, 1, 0}, true);
    ForecastTable t = boxcast::forecast(f, 2);
    const double half1 = t.rows[0].upper - t.rows[0].point;
    const double half2 = t.rows[1].upper - t.rows[1].point;
    REQUIRE_THAT(half1, WithinAbs(4.73394, 0.001));
    REQUIRE_THAT(half2, WithinAbs(6.6948, 0.001));
    REQUIRE_THAT(half2 / half1, WithinAbs(1.41422, 1e-4));
  }
}

TEST_CASE("twice-integrated forecasts settle into constant increments") {
  SECTION("(0,2,1): constant from the second step") {
    ArimaFit f = boxcast::fit(gdp_sub(), {0, 2, 1}, false);
    ForecastTable t = boxcast::forecast(f, 22);
    const double inc2 = t.rows[2].point - t.rows[1].point;
    for (std::size_t h = 2; h < t.rows.size(); ++h)
      REQUIRE_THAT(t.rows[h].point - t.rows[h - 1].point, WithinRel(inc2, 1e-9));
  }

  SECTION("(0,2,0): constant from the first step") {
    ArimaFit f = boxcast::fit(gdp_sub(), {0, 2, 0}, false);
    ForecastTable t = boxcast::forecast(f, 10);
    const double last_diff = gdp_sub().values.back() -
                             gdp_sub().values[gdp_sub().size() - 2];
    REQUIRE_THAT(t.rows[0].point - gdp_sub().values.back(), WithinRel(last_diff, 1e-9));
    for (std::size_t h = 1; h < t.rows.size(); ++h)
      REQUIRE_THAT(t.rows[h].point - t.rows[h - 1].point, WithinRel(last_diff, 1e-9));
  }

  SECTION("(0,1,0) with drift: increments equal the drift") {
    ArimaFit f = boxcast::fit(fx(), {0, 1, 0}, true);
    ForecastTable t = boxcast::forecast(f, 12);
    for (std::size_t h = 1; h < t.rows.size(); ++h)
      REQUIRE_THAT(t.rows[h].point - t.rows[h - 1].point, WithinAbs(f.mu, 1e-9));
  }
}

TEST_CASE("Durbin-Levinson agrees with a direct solve of the lag equations") {
  // Oracle: the PACF at lag k solves the Yule-Walker normal equations
  // Toeplitz(gamma) * phi = gamma[1..k]. Solving that system with a generic
  // least-squares factorization must reproduce the recursion's output.
  for (unsigned seed : {21u, 22u, 23u, 24u, 25u}) {
    for (int n : {20, 34, 50}) {
      AnnualSeries s = testutil::make_series(1900, testutil::white_noise(seed, n));
      const int kmax = std::min(10, n / 2 - 1);
      boxcast::Correlogram cg = boxcast::correlogram(s, kmax);

      // Biased autocovariances about the mean, the correlogram's estimator.
      const double m = boxcast::mean(s.values);
      std::vector<double> gamma(kmax + 1, 0.0);
      for (int k = 0; k <= kmax; ++k) {
        for (int t = 0; t + k < n; ++t)
          gamma[k] += (s.values[t] - m) * (s.values[t + k] - m);
        gamma[k] /= n;
      }

      for (int k = 1; k <= kmax; ++k) {
        Eigen::MatrixXd G(k, k);
        Eigen::VectorXd g(k);
        for (int i = 0; i < k; ++i) {
          g(i) = gamma[i + 1];
          for (int j = 0; j < k; ++j) G(i, j) = gamma[std::abs(i - j)];
        }
        Eigen::VectorXd phi = G.colPivHouseholderQr().solve(g);
        REQUIRE_THAT(cg.pacf[k], WithinAbs(phi(k - 1), 1e-6));
      }
    }
  }

  SECTION("and with the true lag regression, asymptotically") {
    const int n = 400;
    AnnualSeries s = testutil::make_series(1000, testutil::ar1(77u, n, 0.6));
    boxcast::Correlogram cg = boxcast::correlogram(s, 4);
    for (int k = 1; k <= 4; ++k) {
      Eigen::MatrixXd X(n - k, k + 1);
      Eigen::VectorXd y(n - k);
      for (int t = k; t < n; ++t) {
        y(t - k) = s.values[t];
        X(t - k, 0) = 1.0;
        for (int j = 1; j <= k; ++j) X(t - k, j) = s.values[t - j];
      }
      boxcast::RegressionFit ols = boxcast::ols(X, y);
      REQUIRE_THAT(cg.pacf[k], WithinAbs(ols.coefficients(k), 0.05));
    }
  }
}

TEST_CASE("conditional and exact likelihood agree on long AR samples") {
  AnnualSeries sim = testutil::make_series(1, testutil::ar1(3141u, 5000, 0.5));
  ArimaFit css = boxcast::fit(sim, {1, 0, 0}, false, Method::CSS);
  ArimaFit mle = boxcast::fit(sim, {1, 0, 0}, false, Method::ExactMLE);
  REQUIRE_THAT(css.ar[0], WithinAbs(mle.ar[0], 1e-3));
  REQUIRE_THAT(css.loglik, WithinAbs(mle.loglik, 1e-4));

  SECTION("second-order autoregression") {
    // x_t = 0.5 x_{t-1} - 0.25 x_{t-2} + e_t
    std::mt19937 rng(2718u);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x(4000, 0.0);
    for (std::size_t t = 2; t < x.size(); ++t)
      x[t] = 0.5 * x[t - 1] - 0.25 * x[t - 2] + normal(rng);
    AnnualSeries s = testutil::make_series(1, x);
    ArimaFit c2 = boxcast::fit(s, {2, 0, 0}, false, Method::CSS);
    ArimaFit m2 = boxcast::fit(s, {2, 0, 0}, false, Method::ExactMLE);
    REQUIRE_THAT(c2.ar[0], WithinAbs(m2.ar[0], 1e-3));
    REQUIRE_THAT(c2.ar[1], WithinAbs(m2.ar[1], 1e-3));
    REQUIRE_THAT(c2.loglik, WithinAbs(m2.loglik, 1e-3));
  }
}

TEST_CASE("ADF size and power by Monte Carlo") {
  const int reps = 1000;
  const int n = 200;

  SECTION("size under the null: a pure random walk") {
    int rejections = 0;
    for (int rep = 0; rep < reps; ++rep) {
      AnnualSeries rw = testutil::make_series(
          1800, testutil::random_walk(100000u + static_cast<unsigned>(rep), n));
      if (boxcast::adf_test(rw, Deterministic::Constant, 0).reject_5) ++rejections;
    }
    // Nominal 5%; the bound allows finite-sample and MC noise.
    REQUIRE(rejections <= 80);
  }

  SECTION("power against a stationary AR(1)") {
    int rejections = 0;
    for (int rep = 0; rep < reps; ++rep) {
      AnnualSeries ar = testutil::make_series(
          1800, testutil::ar1(200000u + static_cast<unsigned>(rep), n, 0.5));
      if (boxcast::adf_test(ar, Deterministic::Constant, 0).reject_5) ++rejections;
    }
    REQUIRE(rejections >= 800);
  }
}

TEST_CASE("grid search is a pure function of the candidate set") {
  std::vector<std::pair<ArimaOrder, bool>> candidates;
  for (int d = 0; d <= 2; ++d)
    for (int p = 0; p <= 1; ++p)
      for (int q = 0; q <= 1; ++q) candidates.emplace_back(ArimaOrder{p, d, q}, false);

  boxcast::GridResult reference = boxcast::grid_search(gdp_sub(), candidates);
  REQUIRE(reference.has_best);
  REQUIRE(reference.best_aic == ArimaOrder{0, 2, 1});

  std::mt19937 rng(5150u);
  for (int trial = 0; trial < 3; ++trial) {
    auto shuffled = candidates;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    boxcast::GridResult got = boxcast::grid_search(gdp_sub(), shuffled);

    REQUIRE(got.best_aic == reference.best_aic);
    REQUIRE(got.best_bic == reference.best_bic);
    REQUIRE(got.candidates.size() == reference.candidates.size());
    for (std::size_t i = 0; i < got.candidates.size(); ++i) {
      REQUIRE(got.candidates[i].order == reference.candidates[i].order);
      REQUIRE(got.candidates[i].drift == reference.candidates[i].drift);
      REQUIRE(got.candidates[i].ok == reference.candidates[i].ok);
      if (got.candidates[i].ok) {
        // bitwise: the same fits run in a different order
        REQUIRE(got.candidates[i].aic == reference.candidates[i].aic);
        REQUIRE(got.candidates[i].bic == reference.candidates[i].bic);
      }
    }
  }
}
