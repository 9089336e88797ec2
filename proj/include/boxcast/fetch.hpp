// Ingestion of annual indicator series from HTTP endpoints. Two payload
// shapes are supported:
//   generic-json     — a flat array of {"year": int, "value": number|null}
//   worldbank-atlas  — the World Bank API v2 envelope: [meta, [{date, value}]]
// Nulls at either end are trimmed; an interior null is an error (a series
// with a hole cannot be modeled). Parsing is separated from transport so the
// mapping is testable without a network.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "boxcast/errors.hpp"
#include "boxcast/series.hpp"

namespace boxcast {

enum class FetchSource { WorldBankAtlas, GenericJson };

inline FetchSource fetch_source_from_string(const std::string& s) {
  if (s == "worldbank-atlas") return FetchSource::WorldBankAtlas;
  if (s == "generic-json") return FetchSource::GenericJson;
  throw ParameterError("unknown fetch source: " + s + " (use worldbank-atlas or generic-json)");
}

namespace detail {

struct YearValue {
  int year;
  std::optional<double> value;
};

inline std::vector<YearValue> decode_payload(FetchSource source, const std::string& body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed JSON payload: ") + e.what());
  }

  std::vector<YearValue> rows;
  if (source == FetchSource::GenericJson) {
    if (!doc.is_array()) throw DataError("generic-json payload must be a JSON array");
    for (const auto& item : doc) {
      if (!item.is_object() || !item.contains("year"))
        throw DataError("generic-json rows must be objects with a `year` field");
      YearValue yv{item.at("year").get<int>(), std::nullopt};
      if (item.contains("value") && !item.at("value").is_null())
        yv.value = item.at("value").get<double>();
      rows.push_back(yv);
    }
  } else {
    // World Bank envelope: [metadata, data-array]; entries carry the year in
    // a string field `date` and may arrive newest-first.
    if (!doc.is_array() || doc.size() < 2 || !doc[1].is_array())
      throw DataError("worldbank payload must be [metadata, rows]");
    for (const auto& item : doc[1]) {
      if (!item.is_object() || !item.contains("date"))
        throw DataError("worldbank rows must be objects with a `date` field");
      YearValue yv{std::stoi(item.at("date").get<std::string>()), std::nullopt};
      if (item.contains("value") && !item.at("value").is_null())
        yv.value = item.at("value").get<double>();
      rows.push_back(yv);
    }
  }
  return rows;
}

}  // namespace detail

// Map a decoded payload onto a gap-free AnnualSeries.
inline AnnualSeries parse_indicator_payload(FetchSource source, const std::string& body,
                                            const std::string& name, Unit unit,
                                            const std::string& provenance) {
  std::vector<detail::YearValue> rows = detail::decode_payload(source, body);
  if (rows.empty()) throw DataError(name + ": payload holds no rows");

  std::sort(rows.begin(), rows.end(),
            [](const detail::YearValue& a, const detail::YearValue& b) { return a.year < b.year; });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].year == rows[i - 1].year)
      throw DataError(name + ": duplicate year " + std::to_string(rows[i].year));

  // Trim null runs at both ends.
  std::size_t b = 0, e = rows.size();
  while (b < e && !rows[b].value) ++b;
  while (e > b && !rows[e - 1].value) --e;
  if (b == e) throw DataError(name + ": payload holds no non-null values");

  std::vector<double> values;
  values.reserve(e - b);
  for (std::size_t i = b; i < e; ++i) {
    if (!rows[i].value)
      throw DataError(name + ": interior missing value at year " + std::to_string(rows[i].year));
    if (i > b && rows[i].year != rows[i - 1].year + 1)
      throw DataError(name + ": gap in years, missing " + std::to_string(rows[i - 1].year + 1));
    values.push_back(*rows[i].value);
  }
  return AnnualSeries::make(name, unit, rows[b].year, std::move(values), provenance);
}

namespace detail {

inline void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos))
    s.replace(pos, from.size(), to), pos += to.size();
}

inline std::string utc_date_today() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday);
  return buf;
}

}  // namespace detail

// HTTP GET the endpoint (with {indicator}/{country} placeholders substituted)
// and map the response. Provenance records the resolved URL and the
// retrieval date.
inline AnnualSeries fetch_indicator(FetchSource source, const std::string& indicator,
                                    const std::string& country, std::string endpoint,
                                    Unit unit = Unit::Dimensionless) {
  detail::replace_all(endpoint, "{indicator}", indicator);
  detail::replace_all(endpoint, "{country}", country);

  // Split scheme://host[:port]/path?query
  std::size_t scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw ParameterError("endpoint must start with http:// or https://");
  std::string scheme = endpoint.substr(0, scheme_end);
  std::size_t path_start = endpoint.find('/', scheme_end + 3);
  std::string host = endpoint.substr(scheme_end + 3,
                                     path_start == std::string::npos
                                         ? std::string::npos
                                         : path_start - scheme_end - 3);
  std::string path = path_start == std::string::npos ? "/" : endpoint.substr(path_start);

  httplib::Result res = [&] {
    if (scheme == "http") {
      httplib::Client cli(("http://" + host).c_str());
      cli.set_connection_timeout(10);
      cli.set_read_timeout(30);
      return cli.Get(path.c_str());
    }
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    if (scheme == "https") {
      httplib::SSLClient cli(host.c_str());
      cli.set_connection_timeout(10);
      cli.set_read_timeout(30);
      return cli.Get(path.c_str());
    }
#endif
    throw ParameterError("unsupported URL scheme: " + scheme);
  }();

  if (!res)
    throw NetworkError("request to " + endpoint + " failed: " + httplib::to_string(res.error()));
  if (res->status != 200)
    throw NetworkError("request to " + endpoint + " returned HTTP " +
                       std::to_string(res->status));

  std::string name = indicator.empty() ? "indicator" : indicator;
  std::string provenance =
      "fetched from " + endpoint + " on " + detail::utc_date_today() +
      (country.empty() ? "" : " (country " + country + ")");
  return parse_indicator_payload(source, res->body, name, unit, provenance);
}

}  // namespace boxcast
