#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "boxcast/catalog.hpp"
#include "boxcast/scenario.hpp"
#include "util.hpp"

using boxcast::AnnualSeries;
using boxcast::ArimaOrder;
using boxcast::IncomeBand;
using boxcast::MacroScenario;
using boxcast::ParameterError;
using boxcast::RangeError;
using boxcast::ScenarioReport;
using boxcast::Unit;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
AnnualSeries one_point(int year, double value, Unit unit = Unit::Dimensionless) {
  return AnnualSeries::make("pt", unit, year, {value});
}
}  // namespace

TEST_CASE("convert_currency divides over the year overlap") {
  AnnualSeries gdp = boxcast::catalog_get("gdp_rs_crore_1971_2025");
  AnnualSeries fx = boxcast::catalog_get("exchange_rate_1971_2024");
  AnnualSeries usd = boxcast::convert_currency(gdp, fx);

  REQUIRE(usd.first_year == 1971);
  REQUIRE(usd.last_year() == 2024);  // fx ends a year before GDP
  REQUIRE(usd.unit == Unit::Usd);
  REQUIRE_THAT(usd.value_for(2024), WithinAbs(363849.0778, 0.001));
  REQUIRE_THAT(usd.value_for(1971), WithinAbs(46817.0 / 7.5578, 1e-6));

  SECTION("pinned end-of-horizon division") {
    AnnualSeries v = boxcast::convert_currency(one_point(2047, 97797560.0, Unit::RupeeCrore),
                                               one_point(2047, 115.4375));
    REQUIRE_THAT(v.value_for(2047), WithinAbs(847190.5157, 0.5));
  }

  SECTION("a unit exchange rate is the identity") {
    AnnualSeries ones = AnnualSeries::make("unity", Unit::RupeesPerUsd, gdp.first_year,
                                           std::vector<double>(gdp.size(), 1.0));
    AnnualSeries same = boxcast::convert_currency(gdp, ones);
    REQUIRE(same.values == gdp.values);
  }

  SECTION("scaling the rate by c scales the result by 1/c") {
    AnnualSeries scaled_fx = fx;
    for (double& v : scaled_fx.values) v *= 4.0;
    AnnualSeries scaled = boxcast::convert_currency(gdp, scaled_fx);
    for (std::size_t i = 0; i < scaled.size(); ++i)
      REQUIRE_THAT(scaled.values[i], WithinRel(usd.values[i] / 4.0, 1e-12));
  }

  SECTION("non-positive rates are rejected") {
    AnnualSeries bad = fx;
    bad.values[5] = 0.0;
    REQUIRE_THROWS_AS(boxcast::convert_currency(gdp, bad), ParameterError);
    bad.values[5] = -2.0;
    REQUIRE_THROWS_AS(boxcast::convert_currency(gdp, bad), ParameterError);
  }

  SECTION("disjoint spans are rejected") {
    REQUIRE_THROWS_AS(
        boxcast::convert_currency(one_point(1950, 1.0), one_point(2000, 1.0)),
        RangeError);
  }
}

TEST_CASE("ratio_series yields percentages") {
  SECTION("pinned deficit ratio") {
    AnnualSeries r = boxcast::ratio_series(one_point(2047, 2270014.0),
                                           one_point(2047, 97797560.0));
    REQUIRE_THAT(r.value_for(2047), WithinAbs(2.3211, 0.01));
    REQUIRE(r.unit == Unit::Percent);
  }

  SECTION("a series against itself is 100 everywhere") {
    AnnualSeries fx = boxcast::catalog_get("exchange_rate_1971_2024");
    AnnualSeries r = boxcast::ratio_series(fx, fx);
    for (double v : r.values) REQUIRE_THAT(v, WithinAbs(100.0, 1e-12));
  }

  SECTION("zero denominator") {
    REQUIRE_THROWS_AS(boxcast::ratio_series(one_point(2000, 1.0), one_point(2000, 0.0)),
                      ParameterError);
  }

  SECTION("disjoint spans") {
    REQUIRE_THROWS_AS(boxcast::ratio_series(one_point(1950, 1.0), one_point(2000, 1.0)),
                      RangeError);
  }
}

TEST_CASE("growth arithmetic") {
  SECTION("pinned GNI rates") {
    REQUIRE_THAT(boxcast::cagr(2663.0117, 5492.2796, 23), WithinAbs(0.0320, 0.0005));
    REQUIRE_THAT(boxcast::required_growth(2663.0117, 14005.0, 23),
                 WithinAbs(0.0748, 0.0005));
  }

  SECTION("identities") {
    REQUIRE(boxcast::cagr(123.4, 123.4, 7) == 0.0);
    REQUIRE_THAT(boxcast::cagr(50.0, 100.0, 1), WithinAbs(1.0, 1e-12));
    // cagr inverts compounding exactly.
    for (double g : {-0.5, -0.1, 0.0, 0.02, 0.3, 1.0}) {
      for (int n : {1, 5, 23}) {
        double end = 100.0 * std::pow(1.0 + g, n);
        REQUIRE_THAT(boxcast::cagr(100.0, end, n), WithinAbs(g, 1e-12));
      }
    }
  }

  SECTION("a threshold already reached needs zero growth") {
    REQUIRE(boxcast::required_growth(14005.0, 14005.0, 23) == 0.0);
    REQUIRE(boxcast::required_growth(20000.0, 14005.0, 23) < 0.0);
  }

  SECTION("domain errors") {
    REQUIRE_THROWS_AS(boxcast::cagr(100.0, 200.0, 0), ParameterError);
    REQUIRE_THROWS_AS(boxcast::cagr(-1.0, 200.0, 5), ParameterError);
    REQUIRE_THROWS_AS(boxcast::cagr(100.0, 0.0, 5), ParameterError);
  }
}

TEST_CASE("income classification bands") {
  REQUIRE(boxcast::classify_income(500.0) == IncomeBand::Low);
  REQUIRE(boxcast::classify_income(1145.99) == IncomeBand::Low);
  REQUIRE(boxcast::classify_income(1146.0) == IncomeBand::LowerMiddle);
  REQUIRE(boxcast::classify_income(4515.0) == IncomeBand::LowerMiddle);
  REQUIRE(boxcast::classify_income(4516.0) == IncomeBand::UpperMiddle);
  REQUIRE(boxcast::classify_income(5492.28) == IncomeBand::UpperMiddle);
  REQUIRE(boxcast::classify_income(14005.0) == IncomeBand::UpperMiddle);
  REQUIRE(boxcast::classify_income(14005.01) == IncomeBand::High);
  REQUIRE_THROWS_AS(boxcast::classify_income(0.0), ParameterError);
  REQUIRE_THROWS_AS(boxcast::classify_income(-5.0), ParameterError);

  SECTION("band is nondecreasing in income") {
    IncomeBand prev = IncomeBand::Low;
    for (double v = 100.0; v < 20000.0; v += 37.0) {
      IncomeBand b = boxcast::classify_income(v);
      REQUIRE(static_cast<int>(b) >= static_cast<int>(prev));
      prev = b;
    }
  }

  SECTION("names") {
    REQUIRE(std::string(boxcast::to_string(IncomeBand::UpperMiddle)) == "upper-middle");
    REQUIRE(std::string(boxcast::to_string(IncomeBand::High)) == "high");
  }
}

TEST_CASE("bundled scenario reproduces the dollar-GDP horizon") {
  MacroScenario cfg;
  cfg.gdp = boxcast::catalog_get("gdp_rs_crore_1991_2025");
  cfg.fx = boxcast::catalog_get("exchange_rate_1971_2024").slice(1991, 2024);
  cfg.end_year = 2047;

  ScenarioReport rep = boxcast::run_scenario(cfg);

  REQUIRE(rep.gdp.order == ArimaOrder{0, 2, 1});
  REQUIRE_FALSE(rep.gdp.drift);
  REQUIRE(rep.gdp.integration_d == 2);
  REQUIRE(rep.fx.order == ArimaOrder{0, 1, 0});
  REQUIRE(rep.fx.drift);
  REQUIRE(rep.fx.integration_d == 1);

  REQUIRE(rep.gdp_usd.first_year == 1991);
  REQUIRE(rep.gdp_usd.last_year() == 2047);
  REQUIRE_THAT(rep.gdp_usd.value_for(2047), WithinAbs(765728.6367, 10.0));

  // Paths carry history verbatim and forecasts thereafter.
  REQUIRE(rep.fx.path.value_for(2024) == 82.7897);
  REQUIRE(rep.fx.path.value_for(2047) == rep.fx.forecast.rows.back().point);
  REQUIRE(rep.gdp.path.value_for(2025) == 33103215.0);

  // No fiscal or income inputs: the optional blocks stay empty.
  REQUIRE_FALSE(rep.gfd.has_value());
  REQUIRE_FALSE(rep.gni.has_value());
  REQUIRE_FALSE(rep.gfd_ratio.has_value());
  REQUIRE_FALSE(rep.band_end.has_value());
  REQUIRE(rep.annotations.empty());

  SECTION("repeated runs are identical") {
    ScenarioReport again = boxcast::run_scenario(cfg);
    REQUIRE(again.gdp_usd.values == rep.gdp_usd.values);
    REQUIRE(again.fx.aic == rep.fx.aic);
  }
}

TEST_CASE("scenario model overrides compose with hand-built forecasts") {
  MacroScenario cfg;
  cfg.gdp = boxcast::catalog_get("gdp_rs_crore_1991_2025");
  cfg.fx = boxcast::catalog_get("exchange_rate_1971_2024").slice(1991, 2024);
  cfg.end_year = 2040;
  cfg.gdp_model.order = ArimaOrder{0, 1, 0};  // drift defaults on for d <= 1
  cfg.fx_model.order = ArimaOrder{0, 1, 0};
  cfg.fx_model.drift = true;

  ScenarioReport rep = boxcast::run_scenario(cfg);
  REQUIRE(rep.gdp.order == ArimaOrder{0, 1, 0});
  REQUIRE(rep.gdp.drift);

  // Hand-compose the same pipeline from the public pieces.
  auto compose = [&](const AnnualSeries& s) {
    boxcast::ArimaFit f = boxcast::fit(s, {0, 1, 0}, true);
    boxcast::ForecastTable t = boxcast::forecast(f, 2040 - s.last_year());
    std::vector<double> path = s.values;
    for (const auto& row : t.rows) path.push_back(row.point);
    return AnnualSeries::make(s.name, s.unit, s.first_year, std::move(path));
  };
  AnnualSeries usd = boxcast::convert_currency(compose(cfg.gdp), compose(cfg.fx));
  REQUIRE_THAT(rep.gdp_usd.value_for(2040), WithinRel(usd.value_for(2040), 1e-12));

  SECTION("drift can be forced off for an auto-selected order") {
    MacroScenario alt = cfg;
    alt.fx_model = boxcast::ModelOverride{};
    alt.fx_model.drift = false;
    ScenarioReport r2 = boxcast::run_scenario(alt);
    REQUIRE_FALSE(r2.fx.drift);
    REQUIRE(r2.fx.order == ArimaOrder{0, 1, 0});
  }
}

TEST_CASE("scenario with fiscal and income blocks") {
  MacroScenario cfg;
  cfg.gdp = boxcast::catalog_get("gdp_rs_crore_1991_2025");
  cfg.fx = boxcast::catalog_get("exchange_rate_1971_2024").slice(1991, 2024);
  cfg.end_year = 2047;

  // Synthetic fiscal deficit: roughly 5% of GDP with a deterministic wiggle.
  {
    std::vector<double> gfd;
    for (std::size_t i = 0; i < cfg.gdp.size(); ++i)
      gfd.push_back(cfg.gdp.values[i] * (0.05 + 0.004 * std::sin(0.9 * i)));
    cfg.gfd = AnnualSeries::make("gfd", Unit::RupeeCrore, cfg.gdp.first_year, gfd);
  }
  // Synthetic per-capita GNI: a linear climb with a stationary oscillation,
  // ending at the pinned 2024 level.
  {
    std::vector<double> gni;
    for (int y = 1990; y <= 2024; ++y)
      gni.push_back(1130.0 + 45.0 * (y - 1990) + 25.0 * std::sin(1.7 * (y - 1990)));
    gni.back() = 2663.0117;
    cfg.gni = AnnualSeries::make("gni", Unit::UsdPerCapita, 1990, gni);
  }

  ScenarioReport rep = boxcast::run_scenario(cfg);

  REQUIRE(rep.gfd.has_value());
  REQUIRE(rep.gfd_ratio.has_value());
  REQUIRE(rep.gfd_ratio->unit == Unit::Percent);
  REQUIRE(rep.gfd_ratio->last_year() == 2047);
  REQUIRE(rep.gfd_ratio->value_for(2047) > 0.0);

  REQUIRE(rep.gni.has_value());
  REQUIRE(rep.gni_end.has_value());
  REQUIRE(rep.band_end.has_value());
  REQUIRE(rep.forecast_cagr.has_value());
  REQUIRE(rep.required_cagr.has_value());
  // Required growth depends only on the last observation and the threshold.
  REQUIRE_THAT(*rep.required_cagr, WithinAbs(0.0748, 0.0005));
  REQUIRE_THAT(*rep.forecast_cagr,
               WithinAbs(boxcast::cagr(2663.0117, *rep.gni_end, 23), 1e-12));

  REQUIRE(rep.annotations.size() == 3);
  REQUIRE_THAT(rep.annotations[0], ContainsSubstring("fiscal deficit"));
  REQUIRE_THAT(rep.annotations[1], ContainsSubstring("high-income threshold ($14005)"));
  REQUIRE_THAT(rep.annotations[2], ContainsSubstring("threshold/GNI*GDP"));
}

TEST_CASE("scenario end year must lie beyond the sample") {
  MacroScenario cfg;
  cfg.gdp = boxcast::catalog_get("gdp_rs_crore_1991_2025");
  cfg.fx = boxcast::catalog_get("exchange_rate_1971_2024").slice(1991, 2024);
  cfg.end_year = 2025;  // equals the GDP series' last observation
  REQUIRE_THROWS_AS(boxcast::run_scenario(cfg), ParameterError);
}
