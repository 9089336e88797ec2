// Table serialization: CSV (full precision), JSON, and Markdown (4 decimals,
// mirroring the reference table layouts). CSV/JSON are the diff-able
// machine artifacts; Markdown is the human report.

#pragma once

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "boxcast/arima.hpp"
#include "boxcast/csv.hpp"
#include "boxcast/scenario.hpp"
#include "boxcast/series.hpp"
#include "boxcast/stats.hpp"
#include "boxcast/unit_root.hpp"

namespace boxcast {

namespace detail {

inline std::string fmt4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string to_csv(const AnnualSeries& s) {
  std::ostringstream out;
  out << "year,value\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    out << s.year_at(i) << "," << detail::format_double(s.values[i]) << "\n";
  return out.str();
}

inline std::string to_csv(const Correlogram& cg) {
  std::ostringstream out;
  out << "lag,acf,pacf,band\n";
  for (int k = 0; k <= cg.max_lag; ++k) {
    out << k << "," << detail::format_double(cg.acf[k]) << ",";
    if (k >= 1) out << detail::format_double(cg.pacf[k]);
    out << "," << detail::format_double(cg.band) << "\n";
  }
  return out.str();
}

inline std::string to_csv(const ForecastTable& t) {
  std::ostringstream out;
  out << "year,forecast,lower,upper\n";
  for (const ForecastRow& r : t.rows)
    out << r.year << "," << detail::format_double(r.point) << ","
        << detail::format_double(r.lower) << "," << detail::format_double(r.upper) << "\n";
  return out.str();
}

inline std::string to_csv(const GridResult& g) {
  std::ostringstream out;
  out << "p,d,q,aic,bic,status\n";
  for (const GridCell& c : g.candidates) {
    out << c.order.p << "," << c.order.d << "," << c.order.q << ",";
    if (c.ok)
      out << detail::format_double(c.aic) << "," << detail::format_double(c.bic);
    else
      out << ",";
    out << "," << c.status << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const AnnualSeries& s) {
  nlohmann::json j;
  j["name"] = s.name;
  j["unit"] = to_string(s.unit);
  j["first_year"] = s.first_year;
  j["values"] = s.values;
  j["provenance"] = s.provenance;
  if (!s.annotation.empty()) j["annotation"] = s.annotation;
  return j;
}

inline nlohmann::json to_json(const UnitRootReport& r) {
  nlohmann::json j;
  j["test"] = r.test == UnitRootTest::ADF ? "adf" : "pp";
  j["series"] = r.series_label;
  j["deterministic"] = to_string(r.deterministic);
  j[r.test == UnitRootTest::ADF ? "lags" : "bandwidth"] = r.lags_or_bandwidth;
  j["n"] = r.n;
  j["z_t"] = r.z_t;
  if (r.z_rho) j["z_rho"] = *r.z_rho;
  j["p_value"] = r.p_value;
  j["critical"] = {{"1%", r.critical.cv1}, {"5%", r.critical.cv5}, {"10%", r.critical.cv10}};
  j["reject"] = {{"1%", r.reject_1}, {"5%", r.reject_5}, {"10%", r.reject_10}};
  return j;
}

inline nlohmann::json to_json(const Correlogram& cg) {
  nlohmann::json j;
  j["n"] = cg.n;
  j["max_lag"] = cg.max_lag;
  j["acf"] = cg.acf;
  j["pacf"] = std::vector<double>(cg.pacf.begin() + 1, cg.pacf.end());
  j["band"] = cg.band;
  return j;
}

inline nlohmann::json to_json(const ArimaFit& f) {
  nlohmann::json j;
  j["series"] = f.series_name;
  j["order"] = {f.order.p, f.order.d, f.order.q};
  j["drift"] = f.drift;
  j["ar"] = f.ar;
  j["ma"] = f.ma;
  j["mu"] = f.mu;
  j["sigma2"] = f.sigma2;
  if (std::isfinite(f.loglik)) {
    j["loglik"] = f.loglik;
    j["aic"] = f.aic;
    j["bic"] = f.bic;
  }
  j["n_eff"] = f.n_eff;
  j["method"] = to_string(f.method);
  j["converged"] = f.converged;
  j["degenerate"] = f.degenerate;
  return j;
}

inline nlohmann::json to_json(const ForecastTable& t) {
  nlohmann::json j;
  j["series"] = t.series_name;
  j["level"] = t.level;
  j["degenerate"] = t.degenerate;
  nlohmann::json rows = nlohmann::json::array();
  for (const ForecastRow& r : t.rows)
    rows.push_back({{"year", r.year}, {"forecast", r.point}, {"lower", r.lower},
                    {"upper", r.upper}});
  j["rows"] = rows;
  return j;
}

inline nlohmann::json to_json(const GridResult& g) {
  nlohmann::json j;
  nlohmann::json rows = nlohmann::json::array();
  for (const GridCell& c : g.candidates) {
    nlohmann::json row;
    row["order"] = {c.order.p, c.order.d, c.order.q};
    row["drift"] = c.drift;
    row["status"] = c.status;
    if (c.ok) {
      row["aic"] = c.aic;
      row["bic"] = c.bic;
    }
    rows.push_back(row);
  }
  j["candidates"] = rows;
  if (g.has_best) {
    j["best_aic"] = {g.best_aic.p, g.best_aic.d, g.best_aic.q};
    j["best_bic"] = {g.best_bic.p, g.best_bic.d, g.best_bic.q};
  }
  return j;
}

inline nlohmann::json to_json(const IndicatorResult& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["integration_order"] = r.integration_d;
  j["order"] = {r.order.p, r.order.d, r.order.q};
  j["drift"] = r.drift;
  j["aic"] = r.aic;
  j["forecast"] = to_json(r.forecast);
  return j;
}

inline nlohmann::json to_json(const ScenarioReport& rep) {
  nlohmann::json j;
  j["end_year"] = rep.end_year;
  j["gdp"] = to_json(rep.gdp);
  j["fx"] = to_json(rep.fx);
  if (rep.gfd) j["gfd"] = to_json(*rep.gfd);
  if (rep.gni) j["gni"] = to_json(*rep.gni);
  j["gdp_usd"] = to_json(rep.gdp_usd);
  if (rep.gfd_ratio) j["gfd_ratio"] = to_json(*rep.gfd_ratio);
  if (rep.gni_end) j["gni_end"] = *rep.gni_end;
  if (rep.band_end) j["income_band_end"] = to_string(*rep.band_end);
  if (rep.forecast_cagr) j["forecast_cagr"] = *rep.forecast_cagr;
  if (rep.required_cagr) j["required_cagr"] = *rep.required_cagr;
  j["annotations"] = rep.annotations;
  return j;
}

// ---------------------------------------------------------------------------
// Markdown
// ---------------------------------------------------------------------------

inline std::string to_markdown(const UnitRootReport& r) {
  std::ostringstream out;
  const bool pp = r.test == UnitRootTest::PP;
  out << "| variable | " << (pp ? "Z(rho) | " : "") << "Z(t) | p-value | 1% cv | 5% cv | 10% cv |\n";
  out << "|---|" << (pp ? "---|" : "") << "---|---|---|---|---|\n";
  out << "| " << r.series_label << " | ";
  if (pp) out << detail::fmt4(*r.z_rho) << " | ";
  out << detail::fmt4(r.z_t) << significance_stars(r.p_value) << " | " << detail::fmt4(r.p_value)
      << " | " << detail::fmt4(r.critical.cv1) << " | " << detail::fmt4(r.critical.cv5) << " | "
      << detail::fmt4(r.critical.cv10) << " |\n";
  out << "\n*p<0.01, **p<0.05, ***p<0.001\n";
  return out.str();
}

inline std::string to_markdown(const GridResult& g) {
  std::ostringstream out;
  out << "| (p, d, q) | AIC | BIC | status |\n|---|---|---|---|\n";
  for (const GridCell& c : g.candidates) {
    out << "| " << c.order.str() << (c.drift ? " +drift" : "") << " | ";
    if (c.ok)
      out << detail::fmt4(c.aic) << " | " << detail::fmt4(c.bic);
    else
      out << " | ";
    out << " | " << c.status << " |\n";
  }
  if (g.has_best) out << "\nBest by AIC: " << g.best_aic.str() << "\n";
  return out.str();
}

inline std::string to_markdown(const ForecastTable& t) {
  std::ostringstream out;
  char level_buf[16];
  std::snprintf(level_buf, sizeof(level_buf), "%g", t.level * 100.0);
  out << "| year | forecast | lower_" << level_buf << " | upper_" << level_buf << " |\n";
  out << "|---|---|---|---|\n";
  for (const ForecastRow& r : t.rows)
    out << "| " << r.year << " | " << detail::fmt4(r.point) << " | " << detail::fmt4(r.lower)
        << " | " << detail::fmt4(r.upper) << " |\n";
  if (t.degenerate) out << "\n(degenerate fit: residual variance is zero, intervals collapse)\n";
  return out.str();
}

inline std::string to_markdown(const ScenarioReport& rep) {
  std::ostringstream out;
  out << "## Scenario to " << rep.end_year << "\n\n";
  auto model_line = [&](const IndicatorResult& r) {
    out << "- **" << r.name << "**: integrated of order " << r.integration_d << ", model ARIMA"
        << r.order.str() << (r.drift ? " with drift" : "") << ", AIC " << detail::fmt4(r.aic)
        << "\n";
  };
  model_line(rep.gdp);
  model_line(rep.fx);
  if (rep.gfd) model_line(*rep.gfd);
  if (rep.gni) model_line(*rep.gni);
  out << "\n### GDP in US$ (crore)\n\n| year | GDP (Rs crore) | exchange rate | GDP (US$ crore) |\n";
  out << "|---|---|---|---|\n";
  for (std::size_t i = 0; i < rep.gdp_usd.size(); ++i) {
    const int y = rep.gdp_usd.year_at(i);
    out << "| " << y << " | " << detail::fmt4(rep.gdp.path.value_for(y)) << " | "
        << detail::fmt4(rep.fx.path.value_for(y)) << " | " << detail::fmt4(rep.gdp_usd.values[i])
        << " |\n";
  }
  if (rep.gfd_ratio) {
    out << "\n### Fiscal deficit as % of GDP\n\n| year | percent |\n|---|---|\n";
    for (std::size_t i = 0; i < rep.gfd_ratio->size(); ++i)
      out << "| " << rep.gfd_ratio->year_at(i) << " | " << detail::fmt4(rep.gfd_ratio->values[i])
          << " |\n";
  }
  if (rep.gni_end) {
    out << "\n### Income status\n\n";
    out << "- per-capita GNI in " << rep.end_year << ": $" << detail::fmt4(*rep.gni_end) << " ("
        << to_string(*rep.band_end) << " income band)\n";
    out << "- forecast CAGR: " << detail::fmt4(100.0 * *rep.forecast_cagr) << "%\n";
    out << "- required CAGR for high income: " << detail::fmt4(100.0 * *rep.required_cagr)
        << "%\n";
  }
  if (!rep.annotations.empty()) {
    out << "\n### Notes\n\n";
    for (const std::string& a : rep.annotations) out << "- " << a << "\n";
  }
  return out.str();
}

}  // namespace boxcast
