#pragma once

#include <stdexcept>
#include <string>

namespace sparsemap {

// Bad parameters, malformed configs, dimension mismatches. CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures: divergence, non-finite values, failed bracketing. CLI exit code 2.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// LP solver breakdowns (iteration cap, degenerate numerics). CLI exit code 2.
class SolverError : public NumericError {
 public:
  explicit SolverError(const std::string& what) : NumericError(what) {}
};

}  // namespace sparsemap
