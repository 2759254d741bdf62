#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "sparsemap/rng.hpp"

namespace sparsemap {

using BitMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
using BitVector = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

enum class InputKind {
  GaussianIid,     // i.i.d. standard normal coordinates
  SphereUniform,   // uniform on the unit sphere (normalized Gaussian)
  RademacherIid,   // i.i.d. +-1 coin flips
  BalancedBinary,  // exactly half the coordinates +1, half -1 (or {0,1} with a flag)
  SparseBernoulli, // i.i.d. {0,1} with P(1)=p
  SparseUniform,   // exactly round(p*n) ones, uniformly placed
};

struct InputDistribution {
  InputKind kind = InputKind::GaussianIid;
  double p = 0.5;              // density, sparse kinds only
  bool binary_as_01 = false;   // BalancedBinary/RademacherIid: emit {0,1} instead of {-1,+1}
};

enum class TargetKind {
  BernoulliIid,  // each bit independent with P(1)=q
  ExactSSparse,  // per output coordinate, exactly s of the K labels are 1
};

struct TargetDistribution {
  TargetKind kind = TargetKind::BernoulliIid;
  double q = 0.5;    // BernoulliIid only
  long s = 0;        // ExactSSparse only
};

const char* to_string(InputKind kind);
const char* to_string(TargetKind kind);
InputKind input_kind_from_string(const std::string& name);
TargetKind target_kind_from_string(const std::string& name);

/// Where a dataset came from. Synthetic datasets carry exact population
/// parameters so that e.g. centering can use true means instead of estimates.
struct Provenance {
  std::optional<InputDistribution> input_dist;
  std::optional<TargetDistribution> target_dist;
  std::optional<SeedSpec> seed;
  std::string source = "synthetic";  // "synthetic" or "external"
};

/// K memories (x_k, y_k): real inputs of length n, binary targets of length m.
struct Dataset {
  Eigen::MatrixXd inputs;   // K x n
  BitMatrix targets;        // K x m
  Provenance provenance;

  [[nodiscard]] long memories() const { return inputs.rows(); }
  [[nodiscard]] long input_dim() const { return inputs.cols(); }
  [[nodiscard]] long target_dim() const { return targets.cols(); }
};

// Number of ones a sparse_uniform/balanced row carries (round half to even).
long sparse_ones_count(double p, long n);

/// K rows drawn independently from `dist`; a pure function of (dist, n, K, seed).
Eigen::MatrixXd sample_inputs(const InputDistribution& dist, long n, long K, SeedSpec seed);

/// K binary target rows of length m; a pure function of (dist, m, K, seed).
BitMatrix sample_targets(const TargetDistribution& dist, long m, long K, SeedSpec seed);

/// Samples inputs and targets from derived substreams and records provenance.
Dataset make_dataset(const InputDistribution& in_dist, const TargetDistribution& tgt_dist,
                     long n, long m, long K, SeedSpec seed);

/// Validates shape and finiteness; throws ConfigError on violation.
void validate_dataset(const Dataset& data);

struct HammingStats {
  long min = 0;
  long max = 0;
  double mean = 0.0;
  double theoretical_max = 0.0;  // 2 * (mean row density) * m
};

/// Pairwise Hamming distances over all K(K-1)/2 target rows. Requires K >= 2.
HammingStats hamming_stats(const BitMatrix& targets);

// CSV layout: header x0..x{n-1},y0..y{m-1}; reals at 17 significant digits.
void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);
Dataset read_dataset_csv(const std::filesystem::path& path);

// Compact binary container; bit-exact round trip.
void write_dataset_binary(const Dataset& data, const std::filesystem::path& path);
Dataset read_dataset_binary(const std::filesystem::path& path);

}  // namespace sparsemap
