// Shared helpers for the test suites: series construction, seeded simulators,
// and scratch-directory management.

#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "boxcast/series.hpp"

namespace testutil {

inline boxcast::AnnualSeries make_series(int first_year, std::vector<double> values,
                                         const std::string& name = "test",
                                         boxcast::Unit unit = boxcast::Unit::Dimensionless) {
  return boxcast::AnnualSeries::make(name, unit, first_year, std::move(values));
}

inline std::vector<double> white_noise(unsigned seed, int n, double sd = 1.0) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal(0.0, sd);
  std::vector<double> x(n);
  for (double& v : x) v = normal(rng);
  return x;
}

inline std::vector<double> ar1(unsigned seed, int n, double phi, double sd = 1.0) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal(0.0, sd);
  std::vector<double> x(n);
  double prev = 0.0;
  for (int t = 0; t < n; ++t) {
    prev = phi * prev + normal(rng);
    x[t] = prev;
  }
  return x;
}

inline std::vector<double> random_walk(unsigned seed, int n, double sd = 1.0) {
  std::vector<double> x = white_noise(seed, n, sd);
  for (int t = 1; t < n; ++t) x[t] += x[t - 1];
  return x;
}

// Scratch directory under the system temp root, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("boxcast_test_" + tag + "_" + std::to_string(++counter) + "_" +
             std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
