// AnnualSeries: one macro indicator observed once per calendar year, with a
// unit tag and a free-text provenance note. Years are implicit (first_year,
// first_year+1, ...) so a series can never hold gaps. Immutable by
// convention after construction; all transforms return new series.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "boxcast/errors.hpp"

namespace boxcast {

enum class Unit {
  RupeeCrore,     // Rs crore (10^7 rupees)
  Usd,            // US$ crore when derived from RupeeCrore / (Rs per US$)
  RupeesPerUsd,   // exchange rate
  UsdPerCapita,   // per-capita dollar values
  Percent,        // ratio series
  Dimensionless,  // anything else (simulated inputs, test fixtures)
};

inline const char* to_string(Unit u) {
  switch (u) {
    case Unit::RupeeCrore: return "rupee-crore";
    case Unit::Usd: return "usd";
    case Unit::RupeesPerUsd: return "rupees-per-usd";
    case Unit::UsdPerCapita: return "usd-per-capita";
    case Unit::Percent: return "percent";
    case Unit::Dimensionless: return "dimensionless";
  }
  return "dimensionless";
}

inline Unit unit_from_string(const std::string& s) {
  if (s == "rupee-crore") return Unit::RupeeCrore;
  if (s == "usd") return Unit::Usd;
  if (s == "rupees-per-usd") return Unit::RupeesPerUsd;
  if (s == "usd-per-capita") return Unit::UsdPerCapita;
  if (s == "percent") return Unit::Percent;
  if (s == "dimensionless") return Unit::Dimensionless;
  throw ParameterError("unknown unit tag: " + s);
}

struct AnnualSeries {
  std::string name;
  Unit unit = Unit::Dimensionless;
  int first_year = 0;
  std::vector<double> values;
  std::string provenance;
  // Set by transforms, e.g. "Δ^1" after first differencing; empty for raw data.
  std::string annotation;

  std::size_t size() const { return values.size(); }
  int last_year() const { return first_year + static_cast<int>(values.size()) - 1; }
  int year_at(std::size_t i) const { return first_year + static_cast<int>(i); }

  double value_for(int year) const {
    if (year < first_year || year > last_year())
      throw RangeError(name + ": year " + std::to_string(year) + " outside span " +
                       std::to_string(first_year) + ".." + std::to_string(last_year()));
    return values[static_cast<std::size_t>(year - first_year)];
  }

  // Full display label, e.g. "Δ^1 exchange_rate".
  std::string label() const {
    return annotation.empty() ? name : annotation + " " + name;
  }

  // Validating factory; every loader funnels through here.
  static AnnualSeries make(std::string name, Unit unit, int first_year,
                           std::vector<double> values, std::string provenance = "",
                           std::string annotation = "") {
    if (values.empty()) throw DataError(name + ": series must hold at least one value");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i]))
        throw DataError(name + ": non-finite value at year " +
                        std::to_string(first_year + static_cast<int>(i)));
    }
    AnnualSeries s;
    s.name = std::move(name);
    s.unit = unit;
    s.first_year = first_year;
    s.values = std::move(values);
    s.provenance = std::move(provenance);
    s.annotation = std::move(annotation);
    return s;
  }

  // Restrict to [start, end] (inclusive). Values are copied bitwise.
  AnnualSeries slice(int start, int end) const {
    if (start > end)
      throw ParameterError(name + ": slice start " + std::to_string(start) +
                           " after end " + std::to_string(end));
    if (start < first_year || end > last_year())
      throw RangeError(name + ": slice " + std::to_string(start) + ".." +
                       std::to_string(end) + " outside available span " +
                       std::to_string(first_year) + ".." + std::to_string(last_year()));
    AnnualSeries out = *this;
    out.first_year = start;
    out.values.assign(values.begin() + (start - first_year),
                      values.begin() + (end - first_year + 1));
    return out;
  }
};

}  // namespace boxcast
