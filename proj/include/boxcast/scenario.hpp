// Derived development-status analytics: currency conversion, deficit ratios,
// growth arithmetic, World Bank income classification, and the composed
// long-horizon scenario report.

#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "boxcast/arima.hpp"
#include "boxcast/errors.hpp"
#include "boxcast/series.hpp"
#include "boxcast/unit_root.hpp"

namespace boxcast {

// ---------------------------------------------------------------------------
// Elementwise derivations
// ---------------------------------------------------------------------------

namespace detail {

struct Overlap {
  int start = 0, end = 0;
};

inline Overlap overlap_of(const AnnualSeries& a, const AnnualSeries& b) {
  Overlap o{std::max(a.first_year, b.first_year), std::min(a.last_year(), b.last_year())};
  if (o.start > o.end)
    throw RangeError("series " + a.name + " (" + std::to_string(a.first_year) + ".." +
                     std::to_string(a.last_year()) + ") and " + b.name + " (" +
                     std::to_string(b.first_year) + ".." + std::to_string(b.last_year()) +
                     ") share no years");
  return o;
}

}  // namespace detail

// GDP in rupees divided by the Rs/US$ rate, over the year overlap.
// With Rs-crore input the result is in US$ crore.
inline AnnualSeries convert_currency(const AnnualSeries& gdp_rs, const AnnualSeries& fx) {
  detail::Overlap o = detail::overlap_of(gdp_rs, fx);
  std::vector<double> v;
  v.reserve(o.end - o.start + 1);
  for (int y = o.start; y <= o.end; ++y) {
    double rate = fx.value_for(y);
    if (!(rate > 0.0))
      throw ParameterError(fx.name + ": non-positive exchange rate in year " + std::to_string(y));
    v.push_back(gdp_rs.value_for(y) / rate);
  }
  return AnnualSeries::make(gdp_rs.name + "_usd", Unit::Usd, o.start, std::move(v),
                            "derived: " + gdp_rs.name + " / " + fx.name);
}

// 100 * numerator / denominator over the year overlap.
inline AnnualSeries ratio_series(const AnnualSeries& num, const AnnualSeries& den) {
  detail::Overlap o = detail::overlap_of(num, den);
  std::vector<double> v;
  v.reserve(o.end - o.start + 1);
  for (int y = o.start; y <= o.end; ++y) {
    double d = den.value_for(y);
    if (d == 0.0)
      throw ParameterError(den.name + ": zero denominator in year " + std::to_string(y));
    v.push_back(100.0 * num.value_for(y) / d);
  }
  return AnnualSeries::make(num.name + "_pct_of_" + den.name, Unit::Percent, o.start,
                            std::move(v), "derived: 100 * " + num.name + " / " + den.name);
}

inline double cagr(double v_start, double v_end, int years) {
  if (years < 1) throw ParameterError("cagr: years must be >= 1");
  if (!(v_start > 0.0) || !(v_end > 0.0))
    throw ParameterError("cagr: values must be positive");
  return std::pow(v_end / v_start, 1.0 / years) - 1.0;
}

// Annual rate needed to move `current` to `threshold` in `years` years.
// A threshold below current simply yields a negative rate.
inline double required_growth(double current, double threshold, int years) {
  return cagr(current, threshold, years);
}

// ---------------------------------------------------------------------------
// Income classification (World Bank Atlas bands, current US$ per capita)
// ---------------------------------------------------------------------------

enum class IncomeBand { Low, LowerMiddle, UpperMiddle, High };

inline const char* to_string(IncomeBand b) {
  switch (b) {
    case IncomeBand::Low: return "low";
    case IncomeBand::LowerMiddle: return "lower-middle";
    case IncomeBand::UpperMiddle: return "upper-middle";
    case IncomeBand::High: return "high";
  }
  return "low";
}

// Band boundaries: lower-middle 1,146..4,515; upper-middle 4,516..14,005;
// high above 14,005. Quoted boundaries are inclusive, so the partition is
// [1146, 4516) and [4516, 14005].
inline IncomeBand classify_income(double gni_per_capita) {
  if (!(gni_per_capita > 0.0))
    throw ParameterError("classify_income: GNI per capita must be positive");
  if (gni_per_capita < 1146.0) return IncomeBand::Low;
  if (gni_per_capita < 4516.0) return IncomeBand::LowerMiddle;
  if (gni_per_capita <= 14005.0) return IncomeBand::UpperMiddle;
  return IncomeBand::High;
}

inline constexpr double kHighIncomeThreshold = 14005.0;
inline constexpr double kUpperMiddleThreshold = 4516.0;
inline constexpr double kLowerMiddleThreshold = 1146.0;

// ---------------------------------------------------------------------------
// Composed scenario
// ---------------------------------------------------------------------------

struct ModelOverride {
  std::optional<ArimaOrder> order;
  std::optional<bool> drift;
};

struct MacroScenario {
  AnnualSeries gdp;                 // Rs crore
  AnnualSeries fx;                  // Rs per US$
  std::optional<AnnualSeries> gfd;  // Rs crore
  std::optional<AnnualSeries> gni;  // US$ per capita
  int end_year = 2047;
  ModelOverride gdp_model, fx_model, gfd_model, gni_model;
};

struct IndicatorResult {
  std::string name;
  int integration_d = 0;
  ArimaOrder order;
  bool drift = false;
  double aic = 0.0;
  ForecastTable forecast;
  // Observed history followed by the forecast path (point forecasts).
  AnnualSeries path;
};

struct ScenarioReport {
  IndicatorResult gdp, fx;
  std::optional<IndicatorResult> gfd, gni;
  AnnualSeries gdp_usd;                   // derived over history + forecasts
  std::optional<AnnualSeries> gfd_ratio;  // percent of GDP
  std::optional<double> gni_end;          // per-capita GNI at end_year
  std::optional<IncomeBand> band_end;
  std::optional<double> forecast_cagr;    // GNI CAGR, last observed -> end_year
  std::optional<double> required_cagr;    // to reach the high-income threshold
  int end_year = 2047;
  std::vector<std::string> annotations;
};

namespace detail {

inline IndicatorResult project_indicator(const AnnualSeries& s, const ModelOverride& ov,
                                         int end_year) {
  if (end_year <= s.last_year())
    throw ParameterError(s.name + ": end year " + std::to_string(end_year) +
                         " is not beyond the last observation (" +
                         std::to_string(s.last_year()) + ")");
  IndicatorResult r;
  r.name = s.name;
  r.integration_d = integration_order(s, 2, Deterministic::Constant, 0.05);

  ArimaFit f;
  if (ov.order) {
    bool drift = ov.drift.value_or(ov.order->d <= 1);
    f = fit(s, *ov.order, drift);
  } else {
    f = auto_fit(s);
    if (ov.drift && *ov.drift != f.drift) f = fit(s, f.order, *ov.drift);
  }
  r.order = f.order;
  r.drift = f.drift;
  r.aic = f.aic;
  r.forecast = forecast(f, end_year - s.last_year());

  std::vector<double> path = s.values;
  for (const ForecastRow& row : r.forecast.rows) path.push_back(row.point);
  r.path = AnnualSeries::make(s.name + "_path", s.unit, s.first_year, std::move(path),
                              "observed " + std::to_string(s.first_year) + ".." +
                                  std::to_string(s.last_year()) + ", forecast thereafter");
  return r;
}

inline std::string format_rate(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * r);
  return buf;
}

}  // namespace detail

// Run the full pipeline: per indicator choose d, fit (override or stepwise),
// forecast to end_year; then derive dollar GDP, the deficit ratio and the
// income-band arithmetic. Pure function of (config, data).
inline ScenarioReport run_scenario(const MacroScenario& config) {
  ScenarioReport rep;
  rep.end_year = config.end_year;
  rep.gdp = detail::project_indicator(config.gdp, config.gdp_model, config.end_year);
  rep.fx = detail::project_indicator(config.fx, config.fx_model, config.end_year);
  rep.gdp_usd = convert_currency(rep.gdp.path, rep.fx.path);

  if (config.gfd) {
    rep.gfd = detail::project_indicator(*config.gfd, config.gfd_model, config.end_year);
    rep.gfd_ratio = ratio_series(rep.gfd->path, rep.gdp.path);
    rep.annotations.push_back("gross fiscal deficit in " + std::to_string(config.end_year) +
                              ": " + detail::format_rate(
                                  rep.gfd_ratio->value_for(config.end_year) / 100.0) +
                              " of GDP");
  }

  if (config.gni) {
    rep.gni = detail::project_indicator(*config.gni, config.gni_model, config.end_year);
    const double gni_end = rep.gni->path.value_for(config.end_year);
    const double gni_last = config.gni->values.back();
    const int span = config.end_year - config.gni->last_year();
    rep.gni_end = gni_end;
    rep.band_end = classify_income(gni_end);
    rep.forecast_cagr = cagr(gni_last, gni_end, span);
    rep.required_cagr = required_growth(gni_last, kHighIncomeThreshold, span);
    rep.annotations.push_back(
        "per-capita GNI path implies " + detail::format_rate(*rep.forecast_cagr) +
        " average annual growth; reaching the high-income threshold ($" +
        std::to_string(static_cast<int>(kHighIncomeThreshold)) + ") by " +
        std::to_string(config.end_year) + " would require " +
        detail::format_rate(*rep.required_cagr));
    // Dollar-GDP implied by scaling to the high-income threshold; the scaling
    // formula is threshold / gni_end * gdp_usd_end.
    const double gdp_usd_end = rep.gdp_usd.value_for(config.end_year);
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "GDP(US$ crore) at high-income per-capita levels, scaled as "
                  "threshold/GNI*GDP: %.4f",
                  kHighIncomeThreshold / gni_end * gdp_usd_end);
    rep.annotations.push_back(buf);
  }
  return rep;
}

}  // namespace boxcast
