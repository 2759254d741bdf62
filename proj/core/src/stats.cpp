#include "sparsemap/stats.hpp"

#include <cmath>
#include <numbers>

#include "sparsemap/errors.hpp"

namespace sparsemap {

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) throw ConfigError("wilson_interval: trials must be positive");
  if (successes < 0 || successes > trials)
    throw ConfigError("wilson_interval: successes out of range");
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = phat + z2 / (2.0 * n);
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return {(center - half) / denom, (center + half) / denom};
}

double normal_pdf(double r) {
  return std::exp(-0.5 * r * r) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_upper_tail(double r) { return 0.5 * std::erfc(r / std::numbers::sqrt2); }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace sparsemap
