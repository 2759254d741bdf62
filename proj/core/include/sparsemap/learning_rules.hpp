#pragma once

#include <Eigen/Dense>
#include <optional>

#include "sparsemap/data_models.hpp"
#include "sparsemap/rng.hpp"
#include "sparsemap/threshold_map.hpp"

namespace sparsemap {

enum class HebbTransform {
  None,          // W = sum_k y_k x_k^T (with optional centering)
  SignQuantize,  // x-side replaced by sign(x): increments take values -1, 0, 1
  Sparsify,      // final weights masked by independent Bernoulli(rho)
};

struct HebbVariant {
  bool center_x = false;  // use x - E x
  bool center_y = false;  // use y - E y
  HebbTransform transform = HebbTransform::None;
  double rho = 1.0;       // keep-probability, Sparsify only (rho = 1 reduces to None)
  SeedSpec mask_seed;     // Sparsify mask stream
};

enum class BiasKind {
  SubgaussianWindow,  // b(i) = (3/4) gamma^2 n, inside (gamma^2 n / 2, gamma^2 n)
  BinomialWindow,     // b(i) = n p / 6, inside (n p / 12, n p / 4)
  Explicit,
};

struct BiasPolicy {
  BiasKind kind = BiasKind::SubgaussianWindow;
  double gamma = 0.9;       // SubgaussianWindow only
  Eigen::VectorXd value;    // Explicit only
};

/// Population means used for centering and the binomial bias window.
struct Means {
  Eigen::VectorXd input_mean;   // length n
  Eigen::VectorXd target_mean;  // length m
};

/// Exact means from synthetic provenance when available, else empirical
/// column means (external data).
Means resolve_means(const Dataset& data);

/// One-pass Hebb rule W = sum_k tau(y_k) phi(x_k)^T with centering and
/// transform per `variant`; order-independent in k.
ThresholdMap hebb_train(const Dataset& data, const HebbVariant& variant,
                        const BiasPolicy& bias,
                        const std::optional<Means>& known_means = std::nullopt);

struct TrainReport {
  ThresholdMap map;
  bool converged = false;
  long epochs_used = 0;
  long mistake_count = 0;   // perceptron updates
  double final_loss = 0.0;  // gradient descent mean KL loss
};

/// Rosenblatt's rule on the augmented input (x, 1), weights initialized to
/// zero, learning rate 1, targets in {-1, +1}. converged=true iff some full
/// pass makes no update; exhausting max_epochs is not an error.
TrainReport perceptron_train(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& labels_pm,
                             long max_epochs);

/// Per-example logistic-sigmoid gradient descent, Delta w = eta (y - o) x,
/// with the mean relative-entropy loss. Example order is reshuffled each
/// epoch from `seed`. Throws NumericError if the loss goes non-finite.
TrainReport gd_logistic_train(const Dataset& data, double eta, long epochs,
                              double loss_threshold, SeedSpec seed = {});

struct SignalNoise {
  double signal = 0.0;  // self term      tau(y_k(i)) <phi(x_k), x_k>
  double noise = 0.0;   // cross terms    sum_{j != k} tau(y_j(i)) <phi(x_j), x_k>
  double total = 0.0;   // signal + noise = <W_i, x_k>
};

/// Signal/noise split of the Hebb pre-activation for memory k, coordinate i.
SignalNoise signal_noise(const Dataset& data, const HebbVariant& variant, long k, long i,
                         const std::optional<Means>& known_means = std::nullopt);

/// Per-coordinate bias vector implied by a policy (length m).
Eigen::VectorXd bias_vector(const BiasPolicy& bias, long input_dim, long output_dim,
                            const Means& means);

struct WindowedRecall {
  RecallReport in_window;
  long rows_outside_window = 0;
};

/// Recall restricted to rows with gamma sqrt(n) <= |x_k|_2 <= beta sqrt(n);
/// rows outside the norm window are reported separately, not as errors.
WindowedRecall recall_errors_in_norm_window(const ThresholdMap& map, const Dataset& data,
                                            double gamma = 0.9, double beta = 1.1);

}  // namespace sparsemap
