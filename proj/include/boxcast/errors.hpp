// Error taxonomy shared by every module. All failures surface as typed
// exceptions derived from boxcast::Error so callers (and the CLI) can map
// them to diagnostics without string matching.

#pragma once

#include <stdexcept>
#include <string>

namespace boxcast {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or unusable input data: missing files, bad CSV rows, year gaps.
class DataError : public Error {
 public:
  using Error::Error;
};

// A request outside the span of the data it addresses (slices, lookups).
class RangeError : public Error {
 public:
  using Error::Error;
};

// Structurally valid data that is too short for the requested operation.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// An argument outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Degenerate linear algebra: rank-deficient designs, zero-variance series.
class SingularError : public Error {
 public:
  using Error::Error;
};

// An iterative routine failed to reach its target.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Transport-level failure while fetching remote data.
class NetworkError : public Error {
 public:
  using Error::Error;
};

}  // namespace boxcast
