#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sparsemap/data_models.hpp"
#include "sparsemap/geometry.hpp"
#include "sparsemap/learning_rules.hpp"
#include "sparsemap/rng.hpp"

namespace sparsemap {

// All threshold formulas use natural logarithms.

/// Critical Bernoulli sparsity q* = n / (2 K ln(K/n)); valid for K > n.
double predict_transition_q(long n, long K);

/// Critical uniform sparsity s* = n / (2 e ln(K / (2 sqrt(pi) n))); valid
/// for K > 2 sqrt(pi) n.
double predict_uniform_s(long n, long K);

/// Critical K at fixed q from 2 K q ln(K/n) = n, solved by bisection.
double predict_transition_K(long n, double q);

enum class SweepVariable { Q, S, K };
enum class SweepOracle { Lp, Hebb, Perceptron };

struct SweepConfig {
  long n = 100;
  long K = 1000;
  long m = 1;
  SweepVariable variable = SweepVariable::Q;
  std::vector<double> grid;  // strictly increasing
  long trials_per_point = 100;
  SweepOracle oracle = SweepOracle::Lp;
  InputDistribution input_dist{InputKind::GaussianIid};
  TargetDistribution target_dist{TargetKind::BernoulliIid};
  HebbVariant hebb_variant;                         // Hebb oracle only
  BiasPolicy hebb_bias{BiasKind::SubgaussianWindow}; // Hebb oracle only
  long perceptron_max_epochs = 2000;                // perceptron oracle only
  SeedSpec seed;
};

struct SweepRow {
  double point = 0.0;
  long successes = 0;
  long trials = 0;       // trials that produced a verdict
  long solver_errors = 0;
  double prob = 0.0;
  double ci_low = 0.0;   // 95% Wilson
  double ci_high = 1.0;
  double predicted_critical = 0.0;  // NaN outside the formula's regime
};

std::vector<SweepRow> run_phase_sweep(const SweepConfig& config, int threads = 0);

struct TransitionEstimate {
  double crossing = 0.0;  // parameter where the fitted success prob is 1/2
  double slope = 0.0;     // d prob / d ln(parameter) scale coefficient
  double intercept = 0.0;
  bool extrapolated = false;
};

/// Logistic fit of success probability against ln(parameter).
TransitionEstimate estimate_crossing(const std::vector<SweepRow>& rows);

struct HebbStorageConfig {
  long n = 2000;
  long m = 20;
  long K = 500;
  double p = 0.1;   // input density
  double q = 0.02;  // target density
  HebbVariant variant{.center_x = true};
  BiasPolicy bias{BiasKind::BinomialWindow};
  long trials = 50;
  SeedSpec seed;
};

struct HebbStorageResult {
  long trials = 0;
  long zero_error_trials = 0;
  double zero_error_rate = 0.0;
  double mean_bit_error_rate = 0.0;
  // Proof-step diagnostics, pooled over all (memory, coordinate) cells:
  double signal_ge_np3_freq = 0.0;   // among cells with y = 1
  double noise_le_np12_freq = 0.0;   // among all cells
  double mean_abs_noise = 0.0;
  double threshold_np3 = 0.0;
  double threshold_np12 = 0.0;
};

HebbStorageResult hebb_storage_experiment(const HebbStorageConfig& config, int threads = 0);

struct AutoencoderConfig {
  long n = 1500;
  long m = 1500;
  long K = 200;
  double p = 0.05;
  double q = 0.05;
  long trials = 25;
  SeedSpec seed;
};

struct AutoencoderResult {
  long trials = 0;
  double forward_exact_rate = 0.0;
  double inverse_exact_rate = 0.0;
  double roundtrip_exact_rate = 0.0;
  bool regime_warning = false;  // config violates one of the two side conditions
};

/// Doubly-centered Hebb W maps x_k -> y_k; its transpose maps y_k -> x_k.
AutoencoderResult autoencoder_roundtrip(const AutoencoderConfig& config, int threads = 0);

struct FrequencyResult {
  long successes = 0;
  long trials = 0;
  double frequency = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
};

/// Frequency that the first s of N Gaussian points span a face of the hull.
FrequencyResult face_experiment(long n, long N, long s, long trials, SeedSpec seed,
                                int threads = 0);

struct CoreResult {
  FrequencyResult all_probes_contained;
  long probes_tested = 0;
  long probes_contained = 0;
  double radius = 0.0;
  bool regime_warning = false;  // N/n below 10
};

/// Tests the round core: per trial, `probes` points at radius
/// r = sqrt(2 ln(N/n) (1-epsilon)) must all lie in the Gaussian hull.
CoreResult core_experiment(long n, long N, double epsilon, long probes, long trials,
                           SeedSpec seed, int threads = 0);

enum class SubgaussMode { ExactEnumeration, MonteCarlo };

struct SubgaussResult {
  double alpha_hat = 0.0;
  Eigen::VectorXd argmax_direction;
  double allones_value = 0.0;
  bool overflow_clamped = false;
};

/// Sub-gaussian norm of the Rademacher vector: max over sampled unit
/// directions (always including all-ones/sqrt(n)) of the psi_2 norm of
/// <u, x>, each solved from E exp(<u,x>^2/t^2) = 2 by bisection.
/// ExactEnumeration sums over {-1,1}^n and needs n <= 20.
SubgaussResult subgauss_norm_estimate(long n, SubgaussMode mode, long directions,
                                      long samples, SeedSpec seed);

/// psi_2 norm of <x, 1/sqrt(n)>^d (Monte Carlo; exponent clamped on overflow).
SubgaussResult subgauss_tensor_probe(long n, int degree, long samples, SeedSpec seed);

struct MgfRow {
  double sigma2 = 0.0;
  double lhs_estimate = 0.0;  // E exp(sigma^2 X^2 / 2), X = <all-ones/sqrt(n), x>
  double lhs_stderr = 0.0;    // 0 in exact mode
  double rhs = 0.0;           // 1/sqrt(1 - sigma^2)
  bool pass = false;          // lhs <= rhs (1 + 3 SE)
};

std::vector<MgfRow> mgf_bound_check(const std::vector<double>& sigma2_grid, long n,
                                    long samples, SeedSpec seed);

struct TailRow {
  double r = 0.0;
  double lower_bound = 0.0;  // (1/r - 1/r^3) phi(r)
  double exact_tail = 0.0;   // P(g >= r) via erfc
  bool pass = false;         // lower_bound <= exact_tail
};

std::vector<TailRow> gaussian_tail_check(const std::vector<double>& r_grid);

struct CapacityTable {
  int n = 0;
  std::vector<long> count_by_ones;  // index = ones in the truth table
  long total = 0;
};

/// Exact counts of threshold-realizable Boolean functions by ones-count
/// (brute force over all 2^(2^n) truth tables; n <= 4).
CapacityTable capacity_count_experiment(int n, int threads = 0);

const char* to_string(SweepVariable v);
const char* to_string(SweepOracle o);
SweepVariable sweep_variable_from_string(const std::string& name);
SweepOracle sweep_oracle_from_string(const std::string& name);

}  // namespace sparsemap
