// Bundled dataset catalog. The two base series are embedded verbatim so the
// library needs no file I/O to run the reference pipeline; the same numbers
// ship as CSVs under data/ (see data/PROVENANCE.md for sources and vintage).
// Set BOXCAST_DATA_DIR to resolve catalog keys from <dir>/<key>.csv instead
// of the embedded copies.

#pragma once

#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "boxcast/csv.hpp"
#include "boxcast/errors.hpp"
#include "boxcast/series.hpp"

namespace boxcast {

struct CatalogEntry {
  AnnualSeries series;
  std::string citation;
};

namespace detail {

// India nominal GDP at current market prices, Rs crore, 1971-2025.
inline const std::vector<double>& gdp_rs_crore_values() {
  static const std::vector<double> v = {
    46817, 50120, 55245, 67241, 79378, 85212,
    91812, 104024, 112671, 123562, 147063, 172776,
    193255, 225074, 252188, 284534, 318366, 361865,
    429363, 493278, 576109, 662260, 761196, 875992,
    1027570, 1205583, 1394816, 1545294, 1772297, 1988262,
    2139886, 2315243, 2492614, 2792530, 3186332, 3632125,
    4254629, 4898662, 5514152, 6366407, 7634472, 8736329,
    9944013, 11233522, 12467959, 13771874, 15391669, 17090042,
    18899668, 20103593, 19854096, 23597399, 26890473, 30122956,
    33103215,
  };
  return v;
}

// Annual-average Rs/US$ exchange rate, 1971-2024.
inline const std::vector<double>& exchange_rate_values() {
  static const std::vector<double> v = {
    7.5578, 7.4731, 7.6750, 7.7925, 7.9408, 8.6825,
    8.9775, 8.5858, 8.2267, 8.0975, 7.9092, 8.9683,
    9.6660, 10.3400, 11.8886, 12.2349, 12.7782, 12.9658,
    14.4817, 16.6492, 17.9428, 24.4737, 30.6488, 31.3655,
    31.3986, 33.4498, 35.4999, 37.1648, 42.0706, 43.3327,
    45.6844, 47.6919, 48.3953, 45.9516, 44.9315, 44.2735,
    45.2495, 40.2607, 45.9933, 47.4433, 45.5626, 47.9229,
    54.4099, 60.5019, 61.1436, 65.4685, 67.0720, 64.4549,
    69.9229, 70.8970, 74.2250, 74.5039, 80.3635, 82.7897,
  };
  return v;
}

inline std::map<std::string, CatalogEntry> build_catalog() {
  std::map<std::string, CatalogEntry> m;
  const std::string gdp_cite =
      "RBI, Handbook of Statistics on the Indian Economy: nominal GDP at "
      "current market prices, Rs crore (vintage as retrieved; see "
      "data/PROVENANCE.md)";
  const std::string fx_cite =
      "RBI/FBIL reference rate, annual average Rs per US$ (see "
      "data/PROVENANCE.md)";

  AnnualSeries gdp = AnnualSeries::make("gdp_rs_crore_1971_2025", Unit::RupeeCrore,
                                        1971, gdp_rs_crore_values(), gdp_cite);
  AnnualSeries fx = AnnualSeries::make("exchange_rate_1971_2024", Unit::RupeesPerUsd,
                                       1971, exchange_rate_values(), fx_cite);
  AnnualSeries gdp_sub = gdp.slice(1991, 2025);
  gdp_sub.name = "gdp_rs_crore_1991_2025";

  m.emplace("gdp_rs_crore_1971_2025", CatalogEntry{gdp, gdp_cite});
  m.emplace("exchange_rate_1971_2024", CatalogEntry{fx, fx_cite});
  m.emplace("gdp_rs_crore_1991_2025", CatalogEntry{gdp_sub, gdp_cite});
  return m;
}

}  // namespace detail

inline const std::map<std::string, CatalogEntry>& catalog() {
  static const std::map<std::string, CatalogEntry> m = detail::build_catalog();
  return m;
}

inline std::vector<std::string> catalog_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, v] : catalog()) keys.push_back(k);
  return keys;
}

// Resolve a catalog key, honouring the BOXCAST_DATA_DIR override.
inline AnnualSeries catalog_get(const std::string& key) {
  auto it = catalog().find(key);
  if (it == catalog().end()) throw RangeError("unknown catalog key: " + key);
  if (const char* dir = std::getenv("BOXCAST_DATA_DIR")) {
    std::string path = std::string(dir) + "/" + key + ".csv";
    AnnualSeries s = load_csv(path, it->second.series.unit);
    s.name = key;
    s.provenance = it->second.citation + " (loaded from " + path + ")";
    return s;
  }
  return it->second.series;
}

}  // namespace boxcast
