// CSV persistence for AnnualSeries. The on-disk format is deliberately
// minimal: UTF-8, one `year,value` header line, LF endings, dot decimal
// separator regardless of locale. Every parse error names the offending row.

#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "boxcast/errors.hpp"
#include "boxcast/series.hpp"

namespace boxcast {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Locale-independent double parser (std::from_chars never consults locale).
inline bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

inline bool parse_int(const std::string& s, int& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

// Shortest round-trip decimal rendering, locale-free.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

inline AnnualSeries load_csv(const std::string& path, Unit unit) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file (missing header)");

  std::vector<int> years;
  std::vector<double> vals;
  int row = 1;  // header was row 1
  while (std::getline(in, line)) {
    ++row;
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    std::size_t comma = t.find(',');
    if (comma == std::string::npos)
      throw DataError(path + ": row " + std::to_string(row) + ": expected `year,value`");
    std::string ys = detail::trim(t.substr(0, comma));
    std::string vs = detail::trim(t.substr(comma + 1));
    int y;
    double v;
    if (!detail::parse_int(ys, y))
      throw DataError(path + ": row " + std::to_string(row) + ": non-numeric year `" + ys + "`");
    if (!detail::parse_double(vs, v))
      throw DataError(path + ": row " + std::to_string(row) + ": non-numeric value `" + vs + "`");
    if (!years.empty()) {
      if (y <= years.back())
        throw DataError(path + ": row " + std::to_string(row) + ": years not ascending at " +
                        std::to_string(y));
      if (y != years.back() + 1)
        throw DataError(path + ": row " + std::to_string(row) + ": gap in years, missing " +
                        std::to_string(years.back() + 1));
    }
    years.push_back(y);
    vals.push_back(v);
  }
  if (years.empty()) throw DataError(path + ": no data rows");

  std::string name = std::filesystem::path(path).stem().string();
  return AnnualSeries::make(name, unit, years.front(), std::move(vals), "file: " + path);
}

inline void save_csv(const AnnualSeries& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: keep LF endings everywhere
  if (!out) throw DataError("cannot write file: " + path);
  out << "year,value\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    out << s.year_at(i) << "," << detail::format_double(s.values[i]) << "\n";
  if (!out) throw DataError("write failed: " + path);
}

}  // namespace boxcast
