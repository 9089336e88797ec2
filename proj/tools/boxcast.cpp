// boxcast command-line interface.
//
// Exit codes: 0 success, 1 data/model errors (boxcast::Error), 2 usage errors
// (bad flags, unknown subcommands, malformed config files).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boxcast/boxcast.hpp"

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// shared option blocks

struct SeriesArgs {
  std::string data;
  std::string unit = "dimensionless";
  int start = 0;  // 0 = window edge not set
  int end = 0;
  int diff = 0;
};

void add_series_args(CLI::App* cmd, SeriesArgs& a, bool with_diff = false) {
  cmd->add_option("--data", a.data, "input: CSV path or catalog:<key>")->required();
  cmd->add_option("--unit", a.unit,
                  "unit label for raw CSV input (rs-crore, rs-per-usd, usd, "
                  "usd-per-capita, percent, dimensionless)")
      ->capture_default_str();
  cmd->add_option("--start", a.start, "first year of the analysis window");
  cmd->add_option("--end", a.end, "last year of the analysis window");
  if (with_diff)
    cmd->add_option("--diff", a.diff, "difference the series this many times first")
        ->check(CLI::Range(0, 2))
        ->capture_default_str();
}

boxcast::AnnualSeries load_series(const SeriesArgs& a) {
  boxcast::AnnualSeries s =
      a.data.rfind("catalog:", 0) == 0
          ? boxcast::catalog_get(a.data.substr(8))
          : boxcast::load_csv(a.data, boxcast::unit_from_string(a.unit));
  if (a.start != 0 || a.end != 0)
    s = s.slice(a.start != 0 ? a.start : s.first_year, a.end != 0 ? a.end : s.last_year());
  if (a.diff > 0) s = boxcast::difference(s, a.diff);
  return s;
}

boxcast::ArimaOrder parse_order(const std::vector<int>& v, const std::string& flag) {
  if (v.size() != 3) throw CLI::ValidationError(flag, "expected three integers: p,d,q");
  boxcast::ArimaOrder o{v[0], v[1], v[2]};
  try {
    o.validate();
  } catch (const boxcast::Error& e) {
    throw CLI::ValidationError(flag, e.what());
  }
  return o;
}

const std::map<std::string, boxcast::Deterministic> kDetMap = {
    {"none", boxcast::Deterministic::None},
    {"constant", boxcast::Deterministic::Constant},
    {"trend", boxcast::Deterministic::ConstantTrend}};

const std::map<std::string, boxcast::Method> kMethodMap = {
    {"mle", boxcast::Method::ExactMLE}, {"css", boxcast::Method::CSS}};

const std::map<std::string, boxcast::DriftPolicy> kPolicyMap = {
    {"auto", boxcast::DriftPolicy::Auto},
    {"always", boxcast::DriftPolicy::Always},
    {"never", boxcast::DriftPolicy::Never}};

// ---------------------------------------------------------------------------
// artifact output

fs::path ensure_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw boxcast::DataError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw boxcast::DataError("cannot write " + path.string());
  f << content;
  if (!f) throw boxcast::DataError("short write to " + path.string());
  std::cerr << "wrote " << path.string() << '\n';
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// If --dump-config was given, print the resolved option values (reusable as a
// config file) and skip the command body.
bool handle_dump_config(CLI::App* root, bool dump) {
  if (!dump) return false;
  std::cout << root->config_to_str(false, false);
  return true;
}

std::string fit_summary(const boxcast::ArimaFit& f) {
  std::ostringstream out;
  out << "model: ARIMA" << f.order.str() << (f.drift ? " with drift" : "") << " ["
      << boxcast::to_string(f.method) << "]\n";
  out << "series: " << f.series_name << " (n_eff=" << f.n_eff << ", last year " << f.last_year
      << ")\n";
  for (std::size_t i = 0; i < f.ar.size(); ++i)
    out << "  ar" << i + 1 << " = " << boxcast::detail::fmt4(f.ar[i]) << '\n';
  for (std::size_t i = 0; i < f.ma.size(); ++i)
    out << "  ma" << i + 1 << " = " << boxcast::detail::fmt4(f.ma[i]) << '\n';
  if (f.drift) out << "  drift = " << boxcast::detail::fmt4(f.mu) << '\n';
  out << "sigma2 = " << boxcast::detail::fmt4(f.sigma2) << ", loglik = "
      << boxcast::detail::fmt4(f.loglik) << '\n';
  out << "AIC = " << boxcast::detail::fmt4(f.aic) << ", BIC = " << boxcast::detail::fmt4(f.bic)
      << '\n';
  if (f.degenerate) out << "note: exact fit (zero residual variance)\n";
  if (!f.converged) out << "warning: optimizer did not converge\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// reproduce-paper support

struct Pin {
  std::string name;
  bool pass = false;
  std::string detail;
};

class PinSet {
 public:
  void check(const std::string& name, double got, double want, double tol) {
    std::ostringstream d;
    d << "got " << boxcast::detail::format_double(got) << ", want "
      << boxcast::detail::format_double(want) << " +/- " << boxcast::detail::format_double(tol);
    pins_.push_back({name, std::fabs(got - want) <= tol, d.str()});
  }
  void check_rel(const std::string& name, double got, double want, double rel_tol) {
    std::ostringstream d;
    d << "got " << boxcast::detail::format_double(got) << ", want "
      << boxcast::detail::format_double(want) << " +/- "
      << boxcast::detail::format_double(rel_tol * 100) << "%";
    pins_.push_back({name, std::fabs(got - want) <= rel_tol * std::fabs(want), d.str()});
  }
  void check_true(const std::string& name, bool got, const std::string& detail) {
    pins_.push_back({name, got, detail});
  }

  bool all_pass() const {
    for (const Pin& p : pins_)
      if (!p.pass) return false;
    return true;
  }

  void print(std::ostream& out) const {
    for (const Pin& p : pins_)
      out << (p.pass ? "PASS " : "FAIL ") << p.name << ": " << p.detail << '\n';
    out << (all_pass() ? "all checks passed" : "SOME CHECKS FAILED") << " (" << pins_.size()
        << " total)\n";
  }

  std::string markdown() const {
    std::ostringstream out;
    out << "| check | result | detail |\n|---|---|---|\n";
    for (const Pin& p : pins_)
      out << "| " << p.name << " | " << (p.pass ? "pass" : "**FAIL**") << " | " << p.detail
          << " |\n";
    return out.str();
  }

 private:
  std::vector<Pin> pins_;
};

int run_reproduction(const std::string& out_dir);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boxcast: univariate Box-Jenkins forecasting for annual series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("boxcast ") + boxcast::kVersion);
  app.set_config("--config", "",
                 "read options from a config file (keys as printed by --dump-config)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config,
               "print the given options as a config file and exit")
      ->configurable(false);

  // --- ingest -------------------------------------------------------------
  auto* ingest = app.add_subcommand("ingest", "load, window and re-emit a series");
  ingest->fallthrough();
  SeriesArgs in_args;
  std::string in_out, in_fetch, in_indicator, in_country, in_endpoint;
  bool in_plot = false;
  add_series_args(ingest, in_args, true);
  ingest->get_option("--data")->required(false);  // not needed when fetching
  ingest->add_option("--fetch", in_fetch, "fetch from a remote source instead of --data")
      ->transform(CLI::IsMember({"worldbank", "json"}));
  ingest->add_option("--indicator", in_indicator, "indicator code for --fetch");
  ingest->add_option("--country", in_country, "country code for --fetch");
  ingest->add_option("--endpoint", in_endpoint,
                     "endpoint URL template with {indicator}/{country} placeholders");
  ingest->add_option("--out", in_out, "directory for CSV/JSON artifacts");
  ingest->add_flag("--plot", in_plot, "also write an SVG line chart (needs --out)");
  ingest->callback([&] {
    if (handle_dump_config(&app, dump_config)) return;
    boxcast::AnnualSeries s;
    if (!in_fetch.empty()) {
      if (in_endpoint.empty())
        throw CLI::RequiredError("--endpoint is required with --fetch");
      boxcast::FetchSource src = boxcast::fetch_source_from_string(
          in_fetch == "worldbank" ? "worldbank-atlas" : "generic-json");
      s = boxcast::fetch_indicator(src, in_indicator, in_country, in_endpoint,
                                   boxcast::unit_from_string(in_args.unit));
      if (in_args.start != 0 || in_args.end != 0)
        s = s.slice(in_args.start != 0 ? in_args.start : s.first_year,
                    in_args.end != 0 ? in_args.end : s.last_year());
      if (in_args.diff > 0) s = boxcast::difference(s, in_args.diff);
    } else {
      if (in_args.data.empty())
        throw CLI::RequiredError("either --data or --fetch is required");
      s = load_series(in_args);
    }
    std::cout << s.label() << ": " << s.size() << " observations, " << s.first_year << "-"
              << s.last_year() << ", unit " << boxcast::to_string(s.unit) << '\n';
    std::cout << "first " << boxcast::detail::format_double(s.values.front()) << ", last "
              << boxcast::detail::format_double(s.values.back()) << '\n';
    if (!s.provenance.empty()) std::cout << "provenance: " << s.provenance << '\n';
    if (!in_out.empty()) {
      fs::path dir = ensure_dir(in_out);
      write_file(dir / (s.name + ".csv"), boxcast::to_csv(s));
      write_file(dir / (s.name + ".json"), json_text(boxcast::to_json(s)));
      if (in_plot) write_file(dir / (s.name + ".svg"), boxcast::svg_line_chart(s, ""));
    }
  });

  // --- unitroot -----------------------------------------------------------
  auto* unitroot = app.add_subcommand("unitroot", "ADF and Phillips-Perron unit-root tests");
  unitroot->fallthrough();
  SeriesArgs ur_args;
  std::string ur_test = "both", ur_lags = "0", ur_out;
  boxcast::Deterministic ur_det = boxcast::Deterministic::Constant;
  int ur_bandwidth = -1, ur_max_lags = 10;
  add_series_args(unitroot, ur_args, true);
  unitroot->add_option("--test", ur_test, "which test to run")
      ->transform(CLI::IsMember({"adf", "pp", "both"}))
      ->capture_default_str();
  unitroot->add_option("--det", ur_det, "deterministic terms")
      ->transform(CLI::CheckedTransformer(kDetMap, CLI::ignore_case))
      ->default_str("constant");
  unitroot->add_option("--lags", ur_lags, "ADF augmentation lags (integer or 'auto')")
      ->capture_default_str();
  unitroot->add_option("--max-lags", ur_max_lags, "lag ceiling for --lags auto")
      ->check(CLI::Range(0, 24))
      ->capture_default_str();
  unitroot->add_option("--bandwidth", ur_bandwidth,
                       "Newey-West bandwidth for PP (-1 = rule-based default)")
      ->capture_default_str();
  unitroot->add_option("--out", ur_out, "directory for JSON/Markdown artifacts");
  unitroot->callback([&] {
    if (handle_dump_config(&app, dump_config)) return;
    boxcast::AnnualSeries s = load_series(ur_args);
    std::vector<boxcast::UnitRootReport> reports;
    if (ur_test == "adf" || ur_test == "both") {
      int lags;
      if (ur_lags == "auto") {
        lags = boxcast::adf_auto_lags(s, ur_det, ur_max_lags);
      } else if (!boxcast::detail::parse_int(ur_lags, lags) || lags < 0) {
        throw CLI::ValidationError("--lags", "expected a non-negative integer or 'auto'");
      }
      reports.push_back(boxcast::adf_test(s, ur_det, lags));
    }
    if (ur_test == "pp" || ur_test == "both")
      reports.push_back(boxcast::pp_test(s, ur_det, ur_bandwidth));
    for (const boxcast::UnitRootReport& r : reports) std::cout << boxcast::to_markdown(r) << '\n';
    if (!ur_out.empty()) {
      fs::path dir = ensure_dir(ur_out);
      for (const boxcast::UnitRootReport& r : reports) {
        std::string stem = std::string("unitroot_") +
                           (r.test == boxcast::UnitRootTest::ADF ? "adf" : "pp");
        write_file(dir / (stem + ".json"), json_text(boxcast::to_json(r)));
        write_file(dir / (stem + ".md"), boxcast::to_markdown(r));
      }
    }
  });

  // --- correlogram ----------------------------------------------------------
  auto* corr = app.add_subcommand("correlogram", "ACF/PACF table with white-noise bands");
  corr->fallthrough();
  SeriesArgs cg_args;
  int cg_max_lag = -1;
  std::string cg_out;
  bool cg_plot = false;
  add_series_args(corr, cg_args, true);
  corr->add_option("--max-lag", cg_max_lag, "highest lag (-1 = min(n/2-1, 24))")
      ->capture_default_str();
  corr->add_option("--out", cg_out, "directory for CSV/JSON/SVG artifacts");
  corr->add_flag("--plot", cg_plot, "also write an SVG stem chart (needs --out)");
  corr->callback([&] {
    if (handle_dump_config(&app, dump_config)) return;
    boxcast::AnnualSeries s = load_series(cg_args);
    int max_lag =
        cg_max_lag >= 0 ? cg_max_lag : boxcast::default_max_lag(static_cast<int>(s.size()));
    boxcast::Correlogram cg = boxcast::correlogram(s, max_lag);
    std::cout << boxcast::to_csv(cg);
    if (!cg_out.empty()) {
      fs::path dir = ensure_dir(cg_out);
      write_file(dir / "correlogram.csv", boxcast::to_csv(cg));
      write_file(dir / "correlogram.json", json_text(boxcast::to_json(cg)));
      if (cg_plot)
        write_file(dir / "correlogram.svg", boxcast::svg_correlogram(cg, s.label()));
    }
  });

  // --- fit ------------------------------------------------------------------
  auto* fitcmd = app.add_subcommand("fit", "estimate a single ARIMA model");
  fitcmd->fallthrough();
  SeriesArgs ft_args;
  std::vector<int> ft_order;
  bool ft_drift = false;
  boxcast::Method ft_method = boxcast::Method::ExactMLE;
  std::string ft_out;
  add_series_args(fitcmd, ft_args);
  fitcmd->add_option("--order", ft_order, "model order p,d,q")->required()->delimiter(',');
  fitcmd->add_flag("--drift,!--no-drift", ft_drift, "include a drift/constant term");
  fitcmd->add_option("--method", ft_method, "estimation method")
      ->transform(CLI::CheckedTransformer(kMethodMap, CLI::ignore_case))
      ->default_str("mle");
  fitcmd->add_option("--out", ft_out, "directory for the fit JSON");
  fitcmd->callback([&] {
    if (handle_dump_config(&app, dump_config)) return;
    boxcast::AnnualSeries s = load_series(ft_args);
    boxcast::ArimaFit f =
        boxcast::fit(s, parse_order(ft_order, "--order"), ft_drift, ft_method);
    std::cout << fit_summary(f);
    if (!ft_out.empty())
      write_file(ensure_dir(ft_out) / "fit.json", json_text(boxcast::to_json(f)));
  });

  // --- grid -------------------------------------------------------------------
  auto* grid = app.add_subcommand("grid", "exhaustive ARIMA order search ranked by AIC");
  grid->fallthrough();
  SeriesArgs gr_args;
  int gr_max_p = 3, gr_max_d = 2, gr_max_q = 3;
  boxcast::DriftPolicy gr_policy = boxcast::DriftPolicy::Auto;
  boxcast::Method gr_method = boxcast::Method::ExactMLE;
  std::string gr_out;
  add_series_args(grid, gr_args);
  grid->add_option("--max-p", gr_max_p, "largest AR order")
      ->check(CLI::Range(0, boxcast::ArimaOrder::kMaxP))
      ->capture_default_str();
  grid->add_option("--max-d", gr_max_d, "largest differencing order")
      ->check(CLI::Range(0, boxcast::ArimaOrder::kMaxD))
      ->capture_default_str();
  grid->add_option("--max-q", gr_max_q, "largest MA order")
      ->check(CLI::Range(0, boxcast::ArimaOrder::kMaxQ))
      ->capture_default_str();
  grid->add_option("--drift-policy", gr_policy, "drift handling: auto (d==0 only), always, never")
      ->transform(CLI::CheckedTransformer(kPolicyMap, CLI::ignore_case))
      ->default_str("auto");
  grid->add_option("--method", gr_method, "estimation method")
      ->transform(CLI::CheckedTransformer(kMethodMap, CLI::ignore_case))
      ->default_str("mle");
  grid->add_option("--out", gr_out, "directory for CSV/JSON artifacts");
  grid->callback([&] {
    if (handle_dump_config(&app, dump_config)) return;
    boxcast::AnnualSeries s = load_series(gr_args);
    boxcast::GridResult g =
        boxcast::grid_search(s, gr_max_p, gr_max_d, gr_max_q, gr_policy, gr_method);
    std::cout << boxcast::to_markdown(g);
    if (!gr_out.empty()) {
      fs::path dir = ensure_dir(gr_out);
      write_file(dir / "grid.csv", boxcast::to_csv(g));
      write_file(dir / "grid.json", json_text(boxcast::to_json(g)));
    }
  });

  // --- autofit ------------------------------------------------------------------
  auto* autofit = app.add_subcommand("autofit", "stepwise automatic ARIMA selection");
  autofit->fallthrough();
  SeriesArgs af_args;
  int af_max_p = 5, af_max_q = 5;
  boxcast::Method af_method = boxcast::Method::ExactMLE;
  std::string af_out;
  add_series_args(autofit, af_args);
  autofit->add_option("--max-p", af_max_p, "largest AR order considered")
      ->check(CLI::Range(0, boxcast::ArimaOrder::kMaxP))
      ->capture_default_str();
  autofit->add_option("--max-q", af_max_q, "largest MA order considered")
      ->check(CLI::Range(0, boxcast::ArimaOrder::kMaxQ))
      ->capture_default_str();
  autofit->add_option("--method", af_method, "estimation method")
      ->transform(CLI::CheckedTransformer(kMethodMap, CLI::ignore_case))
      ->default_str("mle");
  autofit->add_option("--out", af_out, "directory for the fit JSON");
  autofit->callback([&] {
    if (handle_dump_config(&app, dump_config)) return;
    boxcast::AnnualSeries s = load_series(af_args);
    boxcast::ArimaFit f = boxcast::auto_fit(s, af_max_p, af_max_q, af_method);
    std::cout << "selected ARIMA" << f.order.str() << (f.drift ? " with drift" : "") << '\n';
    std::cout << fit_summary(f);
    if (!af_out.empty())
      write_file(ensure_dir(af_out) / "fit.json", json_text(boxcast::to_json(f)));
  });

  // --- forecast -------------------------------------------------------------------
  auto* fcst = app.add_subcommand("forecast", "fit a model and forecast forward");
  fcst->fallthrough();
  SeriesArgs fc_args;
  std::vector<int> fc_order;
  bool fc_drift = false, fc_plot = false;
  int fc_horizon = 0, fc_to_year = 0;
  double fc_level = 95.0;
  boxcast::Method fc_method = boxcast::Method::ExactMLE;
  std::string fc_out;
  add_series_args(fcst, fc_args);
  auto* fc_order_opt =
      fcst->add_option("--order", fc_order, "model order p,d,q (omit to auto-select)")
          ->delimiter(',');
  auto* fc_drift_opt =
      fcst->add_flag("--drift,!--no-drift", fc_drift, "include a drift/constant term");
  fcst->add_option("--horizon", fc_horizon, "number of years ahead")->check(CLI::Range(1, 200));
  fcst->add_option("--to-year", fc_to_year, "forecast through this year");
  fcst->add_option("--level", fc_level, "prediction-interval coverage in percent")
      ->check(CLI::Range(1.0, 99.99))
      ->capture_default_str();
  fcst->add_option("--method", fc_method, "estimation method")
      ->transform(CLI::CheckedTransformer(kMethodMap, CLI::ignore_case))
      ->default_str("mle");
  fcst->add_option("--out", fc_out, "directory for CSV/JSON/SVG artifacts");
  fcst->add_flag("--plot", fc_plot, "also write an SVG fan chart (needs --out)");
  fcst->callback([&] {
    if (handle_dump_config(&app, dump_config)) return;
    boxcast::AnnualSeries s = load_series(fc_args);
    boxcast::ArimaFit f = fc_order_opt->count() == 0
                              ? boxcast::auto_fit(s, 5, 5, fc_method)
                              : boxcast::fit(s, parse_order(fc_order, "--order"),
                                             fc_drift_opt->count() ? fc_drift : false, fc_method);
    int horizon = fc_horizon;
    if (fc_to_year != 0) {
      if (fc_horizon != 0) throw CLI::ValidationError("--to-year", "conflicts with --horizon");
      horizon = fc_to_year - f.last_year;
      if (horizon < 1)
        throw CLI::ValidationError("--to-year", "must lie beyond the last observation");
    }
    if (horizon == 0) horizon = 10;
    boxcast::ForecastTable t = boxcast::forecast(f, horizon, fc_level / 100.0);
    std::cout << "ARIMA" << f.order.str() << (f.drift ? " with drift" : "") << " on " << s.label()
              << '\n';
    std::cout << boxcast::to_markdown(t);
    if (!fc_out.empty()) {
      fs::path dir = ensure_dir(fc_out);
      write_file(dir / "forecast.csv", boxcast::to_csv(t));
      write_file(dir / "forecast.json", json_text(boxcast::to_json(t)));
      if (fc_plot)
        write_file(dir / "forecast.svg",
                   boxcast::svg_fanchart(s, t, s.label() + " forecast"));
    }
  });

  // --- scenario -------------------------------------------------------------------
  auto* scen = app.add_subcommand("scenario", "multi-indicator development-status projection");
  scen->fallthrough();
  SeriesArgs sc_gdp, sc_fx, sc_gfd, sc_gni;
  int sc_end_year = 2047;
  std::string sc_out;
  std::vector<int> sc_gdp_order, sc_fx_order, sc_gfd_order, sc_gni_order;
  std::string sc_gdp_drift = "auto", sc_fx_drift = "auto", sc_gfd_drift = "auto",
              sc_gni_drift = "auto";
  scen->add_option("--gdp", sc_gdp.data, "GDP series (Rs crore): CSV path or catalog:<key>")
      ->required();
  scen->add_option("--fx", sc_fx.data, "exchange-rate series (Rs per US$)")->required();
  scen->add_option("--gfd", sc_gfd.data, "optional fiscal-deficit series (Rs crore)");
  scen->add_option("--gni", sc_gni.data, "optional per-capita GNI series (US$)");
  scen->add_option("--end-year", sc_end_year, "projection end year")->capture_default_str();
  auto add_override = [&](const std::string& name, std::vector<int>& order, std::string& drift) {
    scen->add_option("--" + name + "-order", order, "override " + name + " model order p,d,q")
        ->delimiter(',');
    scen->add_option("--" + name + "-drift", drift, "override " + name + " drift (on/off/auto)")
        ->transform(CLI::IsMember({"auto", "on", "off"}))
        ->default_str("auto");
  };
  add_override("gdp", sc_gdp_order, sc_gdp_drift);
  add_override("fx", sc_fx_order, sc_fx_drift);
  add_override("gfd", sc_gfd_order, sc_gfd_drift);
  add_override("gni", sc_gni_order, sc_gni_drift);
  scen->add_option("--out", sc_out, "directory for the scenario report and artifacts");
  scen->callback([&] {
    if (handle_dump_config(&app, dump_config)) return;
    using boxcast::Unit;
    auto load_one = [](SeriesArgs& a, Unit unit_hint) {
      a.unit = boxcast::to_string(unit_hint);
      return load_series(a);
    };
    boxcast::MacroScenario cfg;
    cfg.gdp = load_one(sc_gdp, Unit::RupeeCrore);
    cfg.fx = load_one(sc_fx, Unit::RupeesPerUsd);
    if (!sc_gfd.data.empty()) cfg.gfd = load_one(sc_gfd, Unit::RupeeCrore);
    if (!sc_gni.data.empty()) cfg.gni = load_one(sc_gni, Unit::UsdPerCapita);
    cfg.end_year = sc_end_year;
    auto make_override = [](const std::vector<int>& order, const std::string& drift,
                            const std::string& flag) {
      boxcast::ModelOverride ov;
      if (!order.empty()) ov.order = parse_order(order, flag);
      if (drift != "auto") ov.drift = drift == "on";
      return ov;
    };
    cfg.gdp_model = make_override(sc_gdp_order, sc_gdp_drift, "--gdp-order");
    cfg.fx_model = make_override(sc_fx_order, sc_fx_drift, "--fx-order");
    cfg.gfd_model = make_override(sc_gfd_order, sc_gfd_drift, "--gfd-order");
    cfg.gni_model = make_override(sc_gni_order, sc_gni_drift, "--gni-order");
    boxcast::ScenarioReport rep = boxcast::run_scenario(cfg);
    std::cout << boxcast::to_markdown(rep);
    if (!sc_out.empty()) {
      fs::path dir = ensure_dir(sc_out);
      write_file(dir / "scenario.json", json_text(boxcast::to_json(rep)));
      write_file(dir / "report.md", boxcast::to_markdown(rep));
      write_file(dir / "gdp_forecast.csv", boxcast::to_csv(rep.gdp.forecast));
      write_file(dir / "fx_forecast.csv", boxcast::to_csv(rep.fx.forecast));
      write_file(dir / "gdp_usd_path.csv", boxcast::to_csv(rep.gdp_usd));
      if (rep.gfd) write_file(dir / "gfd_forecast.csv", boxcast::to_csv(rep.gfd->forecast));
      if (rep.gfd_ratio)
        write_file(dir / "gfd_ratio_path.csv", boxcast::to_csv(*rep.gfd_ratio));
      if (rep.gni) write_file(dir / "gni_forecast.csv", boxcast::to_csv(rep.gni->forecast));
      write_file(dir / "gdp_fanchart.svg",
                 boxcast::svg_fanchart(cfg.gdp, rep.gdp.forecast, cfg.gdp.label() + " forecast"));
      write_file(dir / "fx_fanchart.svg",
                 boxcast::svg_fanchart(cfg.fx, rep.fx.forecast, cfg.fx.label() + " forecast"));
    }
  });

  // --- reproduce-paper --------------------------------------------------------------
  auto* repro = app.add_subcommand(
      "reproduce-paper", "re-run the bundled reference study and verify its pinned outputs");
  repro->fallthrough();
  std::string rp_out = "reproduction";
  repro->add_option("--out", rp_out, "directory for the study artifacts")
      ->capture_default_str();
  int exit_code = 0;
  repro->callback([&] {
    if (handle_dump_config(&app, dump_config)) return;
    exit_code = run_reproduction(rp_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const boxcast::Error& e) {
    std::cerr << "boxcast: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}

namespace {

// Re-runs the bundled India-2047 study end to end and verifies every pinned
// headline number, writing all tables/charts plus a Markdown report.
int run_reproduction(const std::string& out_dir) {
  using namespace boxcast;
  fs::path dir = ensure_dir(out_dir);
  PinSet pins;
  std::ostringstream md;
  md << "# Bundled reference study: India macro trajectories to 2047\n\n";

  // ---- data ----------------------------------------------------------------
  AnnualSeries fx = catalog_get("exchange_rate_1971_2024");
  AnnualSeries gdp_sub = catalog_get("gdp_rs_crore_1991_2025");
  AnnualSeries fx_sub = fx.slice(1991, fx.last_year());
  AnnualSeries fx_diff = difference(fx, 1);

  // ---- unit-root tests on the exchange rate --------------------------------
  md << "## Unit-root tests (exchange rate)\n\n";
  UnitRootReport adf_level = adf_test(fx, Deterministic::Constant, 0);
  UnitRootReport adf_diff = adf_test(fx_diff, Deterministic::Constant, 0);
  UnitRootReport pp_level = pp_test(fx, Deterministic::Constant);
  UnitRootReport pp_diff = pp_test(fx_diff, Deterministic::Constant);
  for (const auto* r : {&adf_level, &adf_diff, &pp_level, &pp_diff}) md << to_markdown(*r) << '\n';
  write_file(dir / "unitroot_fx_level_adf.json", json_text(to_json(adf_level)));
  write_file(dir / "unitroot_fx_diff_adf.json", json_text(to_json(adf_diff)));
  write_file(dir / "unitroot_fx_level_pp.json", json_text(to_json(pp_level)));
  write_file(dir / "unitroot_fx_diff_pp.json", json_text(to_json(pp_diff)));

  pins.check("adf level z(t), exchange rate", adf_level.z_t, 1.567, 0.01);
  pins.check("adf level p-value", adf_level.p_value, 0.9978, 0.005);
  pins.check("adf differenced z(t)", adf_diff.z_t, -6.363, 0.01);
  pins.check("adf differenced p-value", adf_diff.p_value, 0.0, 0.005);
  pins.check("pp level z(rho)", pp_level.z_rho.value(), 1.159, 0.02);
  pins.check("pp level z(t)", pp_level.z_t, 1.393, 0.02);
  pins.check("pp differenced z(rho)", pp_diff.z_rho.value(), -48.942, 0.1);
  pins.check("pp differenced z(t)", pp_diff.z_t, -6.408, 0.02);

  CriticalValues cv_c = critical_values(Deterministic::Constant, 53);
  pins.check("1% critical value, constant, n=53", cv_c.cv1, -3.576, 0.01);
  pins.check("5% critical value, constant, n=53", cv_c.cv5, -2.928, 0.01);
  pins.check("10% critical value, constant, n=53", cv_c.cv10, -2.599, 0.01);
  CriticalValues cv_t = critical_values(Deterministic::ConstantTrend, 61);
  pins.check("1% critical value, trend, n=61", cv_t.cv1, -4.126, 0.01);
  pins.check("5% critical value, trend, n=61", cv_t.cv5, -3.489, 0.01);
  pins.check("10% critical value, trend, n=61", cv_t.cv10, -3.173, 0.01);

  // ---- correlogram of the differenced exchange rate -------------------------
  Correlogram cg = correlogram(fx_diff, default_max_lag(static_cast<int>(fx_diff.size())));
  write_file(dir / "correlogram_fx_diff.csv", to_csv(cg));
  write_file(dir / "correlogram_fx_diff.svg", svg_correlogram(cg, fx_diff.label()));

  // ---- exchange-rate model and forecast -------------------------------------
  md << "## Exchange-rate model\n\n";
  ArimaFit fx_fit = auto_fit(fx);
  pins.check_true("exchange-rate model is ARIMA(0,1,0) with drift",
                  fx_fit.order == ArimaOrder{0, 1, 0} && fx_fit.drift,
                  "selected ARIMA" + fx_fit.order.str() + (fx_fit.drift ? " with drift" : ""));
  ForecastTable fx_fc = forecast(fx_fit, 2047 - fx.last_year());
  md << to_markdown(fx_fc) << '\n';
  write_file(dir / "forecast_fx.csv", to_csv(fx_fc));
  write_file(dir / "forecast_fx.svg", svg_fanchart(fx, fx_fc, "Exchange rate to 2047"));
  const ForecastRow& fx25 = fx_fc.rows.front();
  pins.check("exchange rate 2025 forecast", fx25.point, 84.20917, 0.001);
  pins.check("exchange rate 2025 lower bound", fx25.lower, 79.47523, 0.01);
  pins.check("exchange rate 2025 upper bound", fx25.upper, 88.94311, 0.01);
  pins.check("exchange rate 2047 forecast", fx_fc.rows.back().point, 115.4375, 0.01);

  ArimaFit fx_sub_fit = fit(fx_sub, ArimaOrder{0, 1, 0}, true);
  ForecastTable fx_sub_fc = forecast(fx_sub_fit, 2047 - fx_sub.last_year());
  write_file(dir / "forecast_fx_sub.csv", to_csv(fx_sub_fc));
  pins.check("exchange rate 2025 forecast (1991 window)", fx_sub_fc.rows.front().point, 84.75476,
             0.001);

  // ---- GDP model selection and forecast -------------------------------------
  md << "## GDP model selection (1991-2025 window, driftless grid)\n\n";
  GridResult gdp_grid = grid_search(gdp_sub, 1, 2, 1, DriftPolicy::Never);
  md << to_markdown(gdp_grid) << '\n';
  write_file(dir / "grid_gdp_sub.csv", to_csv(gdp_grid));
  write_file(dir / "grid_gdp_sub.json", json_text(to_json(gdp_grid)));
  pins.check_true("GDP grid selects ARIMA(0,2,1)",
                  gdp_grid.has_best && gdp_grid.best_aic == ArimaOrder{0, 2, 1},
                  gdp_grid.has_best ? "selected ARIMA" + gdp_grid.best_aic.str()
                                    : "no admissible candidate");
  for (const GridCell& c : gdp_grid.candidates) {
    if (c.order == ArimaOrder{0, 2, 0} && !c.drift)
      pins.check("GDP ARIMA(0,2,0) AIC", c.aic, 989.6011, 0.5);
    if (c.order == ArimaOrder{0, 2, 1} && !c.drift)
      pins.check("GDP ARIMA(0,2,1) AIC", c.aic, 984.4337, 2.0);
  }
  ArimaFit gdp_fit = fit(gdp_sub, ArimaOrder{0, 2, 1}, false);
  ForecastTable gdp_fc = forecast(gdp_fit, 2047 - gdp_sub.last_year());
  md << "## GDP forecast\n\n" << to_markdown(gdp_fc) << '\n';
  write_file(dir / "forecast_gdp_sub.csv", to_csv(gdp_fc));
  write_file(dir / "forecast_gdp_sub.svg", svg_fanchart(gdp_sub, gdp_fc, "GDP to 2047"));
  pins.check_rel("GDP 2047 forecast", gdp_fc.rows.back().point, 98002564.0, 0.005);

  // ---- combined scenario (1991 windows for both indicators) -------------------
  md << "## Development-status scenario\n\n";
  MacroScenario cfg;
  cfg.gdp = gdp_sub;
  cfg.fx = fx_sub;
  cfg.end_year = 2047;
  ScenarioReport rep = run_scenario(cfg);
  md << to_markdown(rep) << '\n';
  write_file(dir / "scenario.json", json_text(to_json(rep)));
  write_file(dir / "gdp_usd_path.csv", to_csv(rep.gdp_usd));
  pins.check("GDP in US$ crore, 2047 (1991 windows)", rep.gdp_usd.value_for(2047), 765728.6367,
             10.0);

  // ---- report ----------------------------------------------------------------
  md << "## Verification checks\n\n" << pins.markdown() << '\n';
  write_file(dir / "report.md", md.str());
  pins.print(std::cout);
  return pins.all_pass() ? 0 : 1;
}

}  // namespace
