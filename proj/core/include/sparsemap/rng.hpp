#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace sparsemap {

/// Identifies one reproducible random stream. Equal (root_seed, stream_id)
/// produce bit-identical draws regardless of scheduling or thread count.
struct SeedSpec {
  std::uint64_t root_seed = 0;
  std::uint64_t stream_id = 0;

  /// Derives an independent child stream by folding indices into the
  /// stream id (e.g. per experiment, grid point, trial).
  [[nodiscard]] SeedSpec child(std::initializer_list<std::uint64_t> indices) const;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

namespace detail {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer: bijective avalanche mix on 64 bits.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t key_of(const SeedSpec& s) {
  return mix64(mix64(s.root_seed + kGolden) ^ s.stream_id);
}
}  // namespace detail

inline SeedSpec SeedSpec::child(std::initializer_list<std::uint64_t> indices) const {
  std::uint64_t id = stream_id;
  for (std::uint64_t ix : indices) id = detail::mix64(id + detail::kGolden + ix);
  return {root_seed, id};
}

/// Counter-based generator: draw i is mix64(key + i*golden), so streams are
/// stateless functions of (seed, draw index). Gaussian variates use the
/// Box-Muller transform (two uniforms per pair).
class CounterRng {
 public:
  explicit CounterRng(SeedSpec seed) : key_(detail::key_of(seed)) {}

  std::uint64_t next_u64() { return detail::mix64(key_ + (++counter_) * detail::kGolden); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Unbiased integer in [0, bound) via multiply-shift with rejection.
  std::uint64_t uniform_index(std::uint64_t bound) {
    using u128 = unsigned __int128;
    std::uint64_t x = next_u64();
    u128 m = static_cast<u128>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<u128>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// One standard normal draw. Generates Box-Muller pairs and caches the spare.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace sparsemap
