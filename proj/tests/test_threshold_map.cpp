#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sparsemap/errors.hpp"
#include "sparsemap/rng.hpp"
#include "sparsemap/threshold_map.hpp"

using namespace sparsemap;

TEST_CASE("heaviside convention") {
  CHECK(heaviside(-3.2) == 0);
  CHECK(heaviside(0.5) == 1);
  CHECK(heaviside(0.0) == 1);
  CHECK(heaviside(-1e-300) == 0);
  CHECK_THROWS_AS(heaviside(std::nan("")), NumericError);
}

TEST_CASE("tensor expansion: homogeneous degree 2") {
  Eigen::VectorXd x(3);
  x << 1, -1, 1;
  const FeatureSpec spec{FeatureKind::Tensor, 2, true, 3};
  CHECK(spec.feature_dim() == 3);
  const Eigen::VectorXd phi = tensor_expand(x, spec);
  CHECK(phi(0) == doctest::Approx(-1));  // x0 x1
  CHECK(phi(1) == doctest::Approx(1));   // x0 x2
  CHECK(phi(2) == doctest::Approx(-1));  // x1 x2
}

TEST_CASE("tensor expansion: non-homogeneous order and cube norm") {
  // Lexicographic on sorted tuples: (0), (0,1), (0,2), (1), (1,2), (2).
  Eigen::VectorXd x(3);
  x << 2, 3, 5;
  const FeatureSpec spec{FeatureKind::Tensor, 2, false, 3};
  CHECK(spec.feature_dim() == 6);
  const Eigen::VectorXd phi = tensor_expand(x, spec);
  Eigen::VectorXd want(6);
  want << 2, 6, 10, 3, 15, 5;
  CHECK(phi == want);

  // On {-1,1}^3 every monomial is +-1, so the squared norm is C(3,<=2)-1 = 6.
  CounterRng rng({11, 0});
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd pm(3);
    for (int j = 0; j < 3; ++j) pm(j) = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const Eigen::VectorXd t = tensor_expand(pm, spec);
    CHECK(t.squaredNorm() == doctest::Approx(6.0));
    for (long i = 0; i < t.size(); ++i) CHECK(std::abs(t(i)) == 1.0);
  }
}

TEST_CASE("tensor expansion: degree 1 is the identity and d > n rejected") {
  Eigen::VectorXd x(4);
  x << 0.5, -2, 3, 7;
  const Eigen::VectorXd phi = tensor_expand(x, {FeatureKind::Tensor, 1, false, 4});
  CHECK(phi == x);
  CHECK_THROWS_AS(
      (void)tensor_expand(x, FeatureSpec{FeatureKind::Tensor, 5, false, 4}),
      ConfigError);
}

TEST_CASE("apply_map basics") {
  // zero weights, positive bias: never fires
  auto zero = make_linear_map(Eigen::MatrixXd::Zero(1, 2), Eigen::VectorXd::Ones(1));
  Eigen::VectorXd x(2);
  x << 13, -4;
  CHECK(apply_map(zero, x)(0) == 0);

  // identity weights, zero bias: componentwise sign
  auto ident = make_linear_map(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  Eigen::VectorXd v(2);
  v << -2, 3;
  const BitVector out = apply_map(ident, v);
  CHECK(out(0) == 0);
  CHECK(out(1) == 1);

  // AND gate on {0,1}^2
  Eigen::MatrixXd w(1, 2);
  w << 1, 1;
  auto gate = make_linear_map(w, Eigen::VectorXd::Constant(1, 1.5));
  int fired = 0;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b) {
      Eigen::VectorXd p(2);
      p << a, b;
      const int y = apply_map(gate, p)(0);
      fired += y;
      CHECK(y == (a & b));
    }
  CHECK(fired == 1);
}

TEST_CASE("apply_map is scale covariant") {
  CounterRng rng({3, 1});
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::MatrixXd w(3, 4);
    Eigen::VectorXd b(3);
    for (long i = 0; i < 3; ++i) {
      b(i) = rng.normal();
      for (long j = 0; j < 4; ++j) w(i, j) = rng.normal();
    }
    const double c = 0.1 + 10.0 * rng.uniform();
    auto map1 = make_linear_map(w, b);
    auto map2 = make_linear_map(c * w, c * b);
    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXd x(4);
      for (long j = 0; j < 4; ++j) x(j) = rng.normal();
      CHECK(apply_map(map1, x) == apply_map(map2, x));
    }
  }
}

TEST_CASE("recall_errors bookkeeping") {
  Dataset data;
  data.inputs.resize(3, 2);
  data.inputs << 1, 0, 0, 1, 1, 1;
  data.targets.resize(3, 2);
  data.targets << 1, 0, 0, 1, 1, 1;

  // identity map nails every row (h(0)=1 does not hurt: zero entries need y=...)
  auto ident = make_linear_map(Eigen::MatrixXd::Identity(2, 2),
                               Eigen::VectorXd::Constant(2, 0.5));
  const RecallReport r = recall_errors(ident, data);
  CHECK(r.total_bit_errors == 0);
  CHECK(r.exact_rows == 3);

  // zero map with positive bias matches only zero targets
  auto zero = make_linear_map(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Ones(2));
  const RecallReport rz = recall_errors(zero, data);
  CHECK(rz.total_bit_errors == 4);
  CHECK(rz.per_coordinate_errors.sum() == rz.total_bit_errors);
  CHECK(rz.exact_rows == 0);

  Dataset zeros = data;
  zeros.targets.setZero();
  CHECK(recall_errors(zero, zeros).total_bit_errors == 0);
}

TEST_CASE("xor is realized by a degree-2 tensor map") {
  Eigen::MatrixXd w(1, 1);
  w << -1;
  ThresholdMap map;
  map.weights = w;
  map.bias = Eigen::VectorXd::Zero(1);
  map.feature = FeatureSpec{FeatureKind::Tensor, 2, true, 2};
  validate_map(map);
  const double pm[2] = {-1.0, 1.0};
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b) {
      Eigen::VectorXd x(2);
      x << pm[a], pm[b];
      CHECK(apply_map(map, x)(0) == (a ^ b));
    }
}

TEST_CASE("map json round trip and dimension checks") {
  const auto dir = std::filesystem::temp_directory_path() / "sparsemap_test_maps";
  std::filesystem::create_directories(dir);
  Eigen::MatrixXd w(2, 3);
  w << 1, 2, 3, 4, 5, 6;
  Eigen::VectorXd b(2);
  b << -0.25, 0.75;
  const auto map = make_linear_map(w, b);
  const auto path = dir / "map.json";
  save_map_json(map, path);
  const ThresholdMap back = load_map_json(path);
  CHECK(back.weights == map.weights);
  CHECK(back.bias == map.bias);
  CHECK(back.feature.base_n == 3);

  const auto bad_path = dir / "bad.json";
  {
    std::ofstream out(bad_path);
    out << R"({"m":2,"n":3,"feature":{"kind":"identity","degree":1,)"
        << R"("homogeneous":false,"base_n":3},"W":[1,2,3,4],"b":[0,0]})";
  }
  CHECK_THROWS_AS(load_map_json(bad_path), ConfigError);
}

TEST_CASE("expand_dataset matches per-row expansion") {
  const Dataset data = make_dataset({InputKind::RademacherIid}, {TargetKind::BernoulliIid, 0.4, 0},
                                    5, 2, 8, {321, 0});
  const FeatureSpec spec{FeatureKind::Tensor, 2, false, 5};
  const Dataset wide = expand_dataset(data, spec);
  CHECK(wide.input_dim() == spec.feature_dim());
  for (long k = 0; k < data.memories(); ++k) {
    const Eigen::VectorXd phi = tensor_expand(data.inputs.row(k).transpose(), spec);
    CHECK(wide.inputs.row(k).transpose() == phi);
  }
  CHECK_FALSE(wide.provenance.input_dist.has_value());
}
