#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sparsemap/errors.hpp"
#include "sparsemap/geometry.hpp"
#include "sparsemap/rng.hpp"

using namespace sparsemap;

namespace {

BitVector bits(std::initializer_list<int> v) {
  BitVector out(static_cast<long>(v.size()));
  long i = 0;
  for (int x : v) out(i++) = static_cast<std::uint8_t>(x);
  return out;
}

Eigen::MatrixXd gaussian_points(long N, long n, SeedSpec seed) {
  return sample_inputs({InputKind::GaussianIid}, n, N, seed);
}

void check_witness(const SeparationCertificate& cert, const Eigen::MatrixXd& points,
                   const BitVector& labels) {
  REQUIRE(cert.witness.has_value());
  const auto& w = *cert.witness;
  double sum1 = 0.0;
  double sum0 = 0.0;
  Eigen::VectorXd p1 = Eigen::VectorXd::Zero(points.cols());
  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(points.cols());
  for (long k = 0; k < points.rows(); ++k) {
    CHECK(w.coefficients(k) >= -1e-9);
    if (labels(k)) {
      sum1 += w.coefficients(k);
      p1 += w.coefficients(k) * points.row(k).transpose();
    } else {
      sum0 += w.coefficients(k);
      p0 += w.coefficients(k) * points.row(k).transpose();
    }
  }
  CHECK(sum1 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sum0 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK((p1 - p0).norm() <= 1e-6 * (1.0 + p1.norm()));
}

}  // namespace

TEST_CASE("three collinear points with the middle point flipped are inseparable") {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 1, 1, 2, 2;
  const auto cert = max_margin_separable(pts, bits({0, 1, 0}));
  CHECK_FALSE(cert.separable);
  check_witness(cert, pts, bits({0, 1, 0}));
}

TEST_CASE("one hypercube vertex separates from the rest") {
  for (int n = 2; n <= 6; ++n) {
    const Eigen::MatrixXd pts = hypercube_vertices(n);
    BitVector labels = BitVector::Zero(pts.rows());
    labels(pts.rows() - 1) = 1;  // the all-ones corner
    const auto cert = max_margin_separable(pts, labels);
    CHECK(cert.separable);
  }
}

TEST_CASE("uniform labels are trivially separable at the lp bound") {
  Eigen::MatrixXd pts = gaussian_points(6, 3, {55, 0});
  const auto all1 = max_margin_separable(pts, bits({1, 1, 1, 1, 1, 1}));
  CHECK(all1.separable);
  CHECK(all1.margin > 1.0);
  const auto all0 = max_margin_separable(pts, bits({0, 0, 0, 0, 0, 0}));
  CHECK(all0.separable);
}

TEST_CASE("duplicated point across classes short-circuits to inseparable") {
  Eigen::MatrixXd pts(3, 2);
  pts << 0.5, -1, 0.5, -1, 3, 3;
  const auto cert = max_margin_separable(pts, bits({1, 0, 0}));
  CHECK_FALSE(cert.separable);
  check_witness(cert, pts, bits({1, 0, 0}));
}

TEST_CASE("margin matches the geometric value and certificate slack holds") {
  Eigen::MatrixXd pts(2, 2);
  pts << 1, 0, -1, 0;
  const auto cert = max_margin_separable(pts, bits({1, 0}));
  REQUIRE(cert.separable);
  CHECK(std::abs(cert.w.norm() - 1.0) < 1e-9);
  CHECK(cert.margin == doctest::Approx(1.0).epsilon(1e-6));

  CounterRng rng({77, 3});
  for (int rep = 0; rep < 20; ++rep) {
    const long n = 2 + static_cast<long>(rng.uniform_index(3));
    const long N = 4 + static_cast<long>(rng.uniform_index(8));
    const Eigen::MatrixXd cloud =
        gaussian_points(N, n, SeedSpec{77, 100}.child({static_cast<std::uint64_t>(rep)}));
    BitVector labels(N);
    for (long k = 0; k < N; ++k) labels(k) = rng.bernoulli(0.5) ? 1 : 0;
    const auto c = max_margin_separable(cloud, labels);
    if (!c.separable) continue;
    for (long k = 0; k < N; ++k) {
      const double side = labels(k) ? 1.0 : -1.0;
      const double slack = side * (cloud.row(k).dot(c.w) - c.b);
      CHECK(slack >= c.margin - 1e-9);
    }
  }
}

TEST_CASE("is_face basics") {
  // unit square: each corner is a vertex (face of dimension 0)
  Eigen::MatrixXd square(4, 2);
  square << 0, 0, 1, 0, 0, 1, 1, 1;
  for (long i = 0; i < 4; ++i) CHECK(is_face(square, {i}));
  // an edge is a face; a diagonal is not
  CHECK(is_face(square, {0, 1}));
  CHECK(is_face(square, {1, 3}));
  CHECK_FALSE(is_face(square, {0, 3}));

  Eigen::MatrixXd line(3, 2);
  line << 0, 0, 1, 1, 2, 2;
  CHECK_FALSE(is_face(line, {1}));
  CHECK(is_face(line, {0}));
  CHECK(is_face(line, {2}));

  // the full set is vacuously a face
  CHECK(is_face(square, {0, 1, 2, 3}));

  CHECK_THROWS_AS(is_face(square, {}), ConfigError);
  CHECK_THROWS_AS(is_face(square, {9}), ConfigError);
}

TEST_CASE("face implies separable, never the converse asserted") {
  CounterRng rng({9, 9});
  for (int rep = 0; rep < 15; ++rep) {
    const long n = 3 + static_cast<long>(rng.uniform_index(2));
    const long N = 12;
    const Eigen::MatrixXd pts =
        gaussian_points(N, n, SeedSpec{9, 10}.child({static_cast<std::uint64_t>(rep)}));
    const long s = 1 + static_cast<long>(rng.uniform_index(3));
    std::vector<long> subset;
    for (long i = 0; i < s; ++i) subset.push_back(i);
    if (is_face(pts, subset)) {
      BitVector labels = BitVector::Zero(N);
      for (long i = 0; i < s; ++i) labels(i) = 1;
      CHECK(max_margin_separable(pts, labels).separable);
    }
  }
}

TEST_CASE("in_hull basics") {
  const long n = 4;
  Eigen::MatrixXd pts(2 * n, n);
  pts.topRows(n) = Eigen::MatrixXd::Identity(n, n);
  pts.bottomRows(n) = -Eigen::MatrixXd::Identity(n, n);
  CHECK(in_hull(Eigen::VectorXd::Zero(n), pts));
  Eigen::VectorXd outside = Eigen::VectorXd::Zero(n);
  outside(0) = 2.0;
  CHECK_FALSE(in_hull(outside, pts));
  // boundary-ish point strictly inside
  Eigen::VectorXd inside = Eigen::VectorXd::Constant(n, 1.0 / (2.0 * n));
  CHECK(in_hull(inside, pts));
}

TEST_CASE("hull membership and separability are mutually exclusive") {
  CounterRng rng({31, 0});
  for (int rep = 0; rep < 25; ++rep) {
    const long n = 2 + static_cast<long>(rng.uniform_index(3));
    const long N = 6 + static_cast<long>(rng.uniform_index(6));
    const Eigen::MatrixXd cloud =
        gaussian_points(N, n, SeedSpec{31, 1}.child({static_cast<std::uint64_t>(rep)}));
    Eigen::VectorXd probe(n);
    for (long j = 0; j < n; ++j) probe(j) = 1.5 * rng.normal();
    Eigen::MatrixXd all(N + 1, n);
    all.topRows(N) = cloud;
    all.bottomRows(1) = probe.transpose();
    BitVector labels = BitVector::Zero(N + 1);
    labels(N) = 1;
    const bool inside = in_hull(probe, cloud);
    const bool separable = max_margin_separable(all, labels).separable;
    CHECK(inside != separable);
  }
}

TEST_CASE("boolean verdicts are invariant under affine maps") {
  CounterRng rng({47, 0});
  for (int rep = 0; rep < 10; ++rep) {
    const long n = 3;
    const long N = 10;
    const SeedSpec s = SeedSpec{47, 1}.child({static_cast<std::uint64_t>(rep)});
    const Eigen::MatrixXd pts = gaussian_points(N, n, s);
    // well-conditioned affine map: orthogonal factor times a mild diagonal, plus shift
    Eigen::MatrixXd raw(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) raw(i, j) = rng.normal();
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::VectorXd diag(n);
    for (long i = 0; i < n; ++i) diag(i) = 0.5 + rng.uniform();
    const Eigen::MatrixXd A = Q * diag.asDiagonal();
    Eigen::VectorXd shift(n);
    for (long i = 0; i < n; ++i) shift(i) = rng.normal();
    const Eigen::MatrixXd mapped = (pts * A.transpose()).rowwise() + shift.transpose();

    BitVector labels(N);
    for (long k = 0; k < N; ++k) labels(k) = rng.bernoulli(0.4) ? 1 : 0;
    CHECK(max_margin_separable(pts, labels).separable ==
          max_margin_separable(mapped, labels).separable);

    CHECK(is_face(pts, {0, 1}) == is_face(mapped, {0, 1}));

    const Eigen::VectorXd probe = pts.colwise().mean();
    const Eigen::VectorXd probe_mapped = A * probe + shift;
    CHECK(in_hull(probe, pts) == in_hull(probe_mapped, mapped));
  }
}

TEST_CASE("lp verdict agrees with the exhaustive hyperplane oracle") {
  CounterRng rng({99, 0});
  int checked = 0;
  for (int rep = 0; rep < 120; ++rep) {
    const long n = 1 + static_cast<long>(rng.uniform_index(4));
    const long N = 3 + static_cast<long>(rng.uniform_index(10));
    const Eigen::MatrixXd pts =
        gaussian_points(N, n, SeedSpec{99, 1}.child({static_cast<std::uint64_t>(rep)}));
    BitVector labels(N);
    for (long k = 0; k < N; ++k) labels(k) = rng.bernoulli(0.5) ? 1 : 0;
    const bool lp_verdict = max_margin_separable(pts, labels).separable;
    const bool oracle = testing::exhaustive_separable(pts, labels);
    CHECK(lp_verdict == oracle);
    ++checked;
  }
  CHECK(checked == 120);
}

TEST_CASE("threshold dichotomy counts on tiny hypercubes") {
  CHECK(enumerate_threshold_dichotomies(2) == 14);
  CHECK(enumerate_threshold_dichotomies(3, 1) == 8);    // 2^n
  CHECK(enumerate_threshold_dichotomies(3, 2) == 12);   // n 2^(n-1)
  // consistency of the filtered and unfiltered paths
  long total = 0;
  for (long k = 0; k <= 4; ++k) total += enumerate_threshold_dichotomies(2, k);
  CHECK(total == 14);
  CHECK_THROWS_AS(enumerate_threshold_dichotomies(5), ConfigError);
  CHECK_THROWS_AS(enumerate_threshold_dichotomies(6, 1), ConfigError);
}
