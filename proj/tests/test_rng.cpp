#include <doctest.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "sparsemap/parallel.hpp"
#include "sparsemap/rng.hpp"

using namespace sparsemap;

TEST_CASE("counter rng is a pure function of the seed") {
  CounterRng a({42, 7});
  CounterRng b({42, 7});
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

  CounterRng c({42, 8});
  CounterRng d({43, 7});
  CounterRng e({42, 7});
  int diff_c = 0;
  int diff_d = 0;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t r = e.next_u64();
    diff_c += c.next_u64() != r;
    diff_d += d.next_u64() != r;
  }
  CHECK(diff_c > 60);
  CHECK(diff_d > 60);
}

TEST_CASE("child streams are deterministic and distinct") {
  const SeedSpec base{9, 0};
  CHECK(base.child({1, 2, 3}) == base.child({1, 2, 3}));
  CHECK(base.child({1, 2, 3}) != base.child({1, 2, 4}));
  CHECK(base.child({1, 2, 3}) != base.child({1, 3, 2}));
  CHECK(base.child({0}) != base.child({1}));
}

TEST_CASE("uniform and normal moments") {
  CounterRng rng({2024, 1});
  const int count = 200000;
  double mean_u = 0.0;
  double mean_n = 0.0;
  double var_n = 0.0;
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    mean_u += u;
    const double g = rng.normal();
    mean_n += g;
    var_n += g * g;
  }
  mean_u /= count;
  mean_n /= count;
  var_n /= count;
  CHECK(std::abs(mean_u - 0.5) < 0.005);
  CHECK(std::abs(mean_n) < 0.01);
  CHECK(std::abs(var_n - 1.0) < 0.02);
}

TEST_CASE("uniform_index stays in range and covers values") {
  CounterRng rng({5, 5});
  std::vector<int> hits(10, 0);
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.uniform_index(10);
    REQUIRE(v < 10);
    ++hits[static_cast<std::size_t>(v)];
  }
  for (int h : hits) CHECK(h > 800);
}

TEST_CASE("parallel_for result is independent of worker count") {
  auto run = [](int threads) {
    std::vector<double> out(503);
    parallel_for(static_cast<std::int64_t>(out.size()), threads, [&](std::int64_t i) {
      CounterRng rng(SeedSpec{77, 0}.child({static_cast<std::uint64_t>(i)}));
      out[static_cast<std::size_t>(i)] = rng.normal();
    });
    return out;
  };
  const auto base = run(1);
  CHECK(run(2) == base);
  CHECK(run(5) == base);
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::int64_t i) {
                                 if (i == 57) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}
