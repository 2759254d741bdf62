#pragma once

#include <cstdint>
#include <string_view>

namespace sparsemap {

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a binomial proportion (default 95%).
/// Well behaved at 0 and 1 endpoints.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = 1.959963984540054);

/// Standard normal density and upper tail P(g >= r), the latter via erfc.
double normal_pdf(double r);
double normal_upper_tail(double r);

/// FNV-1a 64-bit digest, used for config hashes and output file digests.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace sparsemap
