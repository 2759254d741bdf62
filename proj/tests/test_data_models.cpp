#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "sparsemap/data_models.hpp"
#include "sparsemap/errors.hpp"

using namespace sparsemap;

namespace {
const SeedSpec kSeed{123456789, 0};
}

TEST_CASE("sparse_uniform rows carry exactly round(p n) ones") {
  const auto X = sample_inputs({InputKind::SparseUniform, 0.5}, 4, 1, kSeed);
  CHECK(X.sum() == doctest::Approx(2.0));
  const auto X2 = sample_inputs({InputKind::SparseUniform, 0.3}, 10, 50, kSeed);
  for (long k = 0; k < 50; ++k) {
    CHECK(X2.row(k).sum() == doctest::Approx(3.0));
    for (long j = 0; j < 10; ++j) CHECK((X2(k, j) == 0.0 || X2(k, j) == 1.0));
  }
}

TEST_CASE("sphere_uniform rows have unit norm") {
  const auto X = sample_inputs({InputKind::SphereUniform}, 10, 3, kSeed);
  for (long k = 0; k < 3; ++k) CHECK(std::abs(X.row(k).norm() - 1.0) < 1e-12);
}

TEST_CASE("gaussian sample mean concentrates") {
  const auto X = sample_inputs({InputKind::GaussianIid}, 1000, 200, kSeed);
  const double mean = X.mean();
  CHECK(mean > -0.01);
  CHECK(mean < 0.01);
  // per-coordinate variance near 1
  const double var = X.array().square().mean() - mean * mean;
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("rademacher rows are +-1 with small per-coordinate mean") {
  const long K = 4000;
  const auto X = sample_inputs({InputKind::RademacherIid}, 8, K, kSeed);
  for (long k = 0; k < K; ++k)
    for (long j = 0; j < 8; ++j) CHECK(std::abs(X(k, j)) == 1.0);
  const double bound = 5.0 / std::sqrt(static_cast<double>(K));
  for (long j = 0; j < 8; ++j) CHECK(std::abs(X.col(j).mean()) < bound);

  const auto X01 = sample_inputs({InputKind::RademacherIid, 0.5, true}, 6, 20, kSeed);
  for (long k = 0; k < 20; ++k)
    for (long j = 0; j < 6; ++j) CHECK((X01(k, j) == 0.0 || X01(k, j) == 1.0));
}

TEST_CASE("balanced_binary splits coordinates evenly") {
  const auto X = sample_inputs({InputKind::BalancedBinary}, 8, 30, kSeed);
  for (long k = 0; k < 30; ++k) {
    long plus = 0;
    for (long j = 0; j < 8; ++j) {
      CHECK(std::abs(X(k, j)) == 1.0);
      plus += X(k, j) > 0;
    }
    CHECK(plus == 4);
  }
  const auto X01 = sample_inputs({InputKind::BalancedBinary, 0.5, true}, 8, 5, kSeed);
  for (long k = 0; k < 5; ++k) CHECK(X01.row(k).sum() == doctest::Approx(4.0));
}

TEST_CASE("sparse_bernoulli empirical density is within 5 sigma") {
  const double p = 0.07;
  const long n = 400;
  const long K = 500;
  const auto X = sample_inputs({InputKind::SparseBernoulli, p}, n, K, kSeed);
  const double density = X.sum() / static_cast<double>(n * K);
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(n * K));
  CHECK(std::abs(density - p) < 5.0 * sigma);
}

TEST_CASE("invalid density is a parameter error") {
  CHECK_THROWS_AS(sample_inputs({InputKind::SparseBernoulli, 0.0}, 4, 1, kSeed), ConfigError);
  CHECK_THROWS_AS(sample_inputs({InputKind::SparseUniform, 1.5}, 4, 1, kSeed), ConfigError);
  CHECK_THROWS_AS(sample_inputs({InputKind::GaussianIid}, 0, 1, kSeed), ConfigError);
}

TEST_CASE("sampling is deterministic in the seed") {
  const InputDistribution dist{InputKind::GaussianIid};
  const auto a = sample_inputs(dist, 13, 7, kSeed);
  const auto b = sample_inputs(dist, 13, 7, kSeed);
  CHECK(a == b);
  const auto c = sample_inputs(dist, 13, 7, kSeed.child({1}));
  CHECK(a != c);
}

TEST_CASE("exact_s_sparse targets have column sums s") {
  const auto zeros = sample_targets({TargetKind::ExactSSparse, 0.0, 0}, 5, 10, kSeed);
  CHECK(zeros.cast<int>().sum() == 0);

  const auto Y = sample_targets({TargetKind::ExactSSparse, 0.0, 3}, 2, 10, kSeed);
  for (long i = 0; i < 2; ++i) CHECK(Y.col(i).cast<int>().sum() == 3);

  CHECK_THROWS_AS(sample_targets({TargetKind::ExactSSparse, 0.0, 11}, 2, 10, kSeed),
                  ConfigError);
}

TEST_CASE("bernoulli target column sum lands in the binomial window") {
  const auto Y = sample_targets({TargetKind::BernoulliIid, 0.02, 0}, 1, 10000, kSeed);
  const int sum = Y.cast<int>().sum();
  CHECK(sum >= 140);
  CHECK(sum <= 260);
}

TEST_CASE("hamming stats") {
  BitMatrix same(2, 3);
  same << 1, 0, 1, 1, 0, 1;
  const auto s0 = hamming_stats(same);
  CHECK(s0.min == 0);
  CHECK(s0.max == 0);
  CHECK(s0.mean == doctest::Approx(0.0));

  BitMatrix diag(2, 2);
  diag << 1, 0, 0, 1;
  const auto s1 = hamming_stats(diag);
  CHECK(s1.mean == doctest::Approx(2.0));
  CHECK(s1.max <= 2);

  // disjoint supports, q m ones each: distance 2 q m = theoretical max
  BitMatrix disjoint(2, 10);
  disjoint.setZero();
  disjoint(0, 0) = disjoint(0, 1) = 1;
  disjoint(1, 2) = disjoint(1, 3) = 1;
  const auto s2 = hamming_stats(disjoint);
  CHECK(s2.max == 4);
  CHECK(s2.theoretical_max == doctest::Approx(4.0));

  BitMatrix one(1, 3);
  CHECK_THROWS_AS(hamming_stats(one), ConfigError);
}

TEST_CASE("dataset csv and binary round trips are exact") {
  const Dataset data = make_dataset({InputKind::GaussianIid}, {TargetKind::BernoulliIid, 0.3, 0},
                                    5, 3, 11, kSeed);
  const auto dir = std::filesystem::temp_directory_path() / "sparsemap_test_io";
  std::filesystem::create_directories(dir);

  const auto csv_path = dir / "data.csv";
  write_dataset_csv(data, csv_path);
  {
    std::ifstream in(csv_path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x0,x1,x2,x3,x4,y0,y1,y2");
  }
  const Dataset from_csv = read_dataset_csv(csv_path);
  CHECK(from_csv.inputs == data.inputs);
  CHECK(from_csv.targets == data.targets);
  CHECK(from_csv.provenance.source == "external");

  const auto bin_path = dir / "data.smds";
  write_dataset_binary(data, bin_path);
  const Dataset from_bin = read_dataset_binary(bin_path);
  CHECK(from_bin.inputs == data.inputs);
  CHECK(from_bin.targets == data.targets);
}

TEST_CASE("dataset validation rejects NaN and shape mismatches") {
  Dataset bad = make_dataset({InputKind::GaussianIid}, {TargetKind::BernoulliIid, 0.5, 0}, 3, 2,
                             4, kSeed);
  bad.inputs(1, 2) = std::nan("");
  CHECK_THROWS_AS(validate_dataset(bad), ConfigError);

  Dataset mismatch = make_dataset({InputKind::GaussianIid}, {TargetKind::BernoulliIid, 0.5, 0},
                                  3, 2, 4, kSeed);
  mismatch.targets.conservativeResize(3, 2);
  CHECK_THROWS_AS(validate_dataset(mismatch), ConfigError);
}
