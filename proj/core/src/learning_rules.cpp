#include "sparsemap/learning_rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "sparsemap/errors.hpp"

namespace sparsemap {

namespace {

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

Eigen::MatrixXd hatted_inputs(const Dataset& data, const HebbVariant& variant,
                              const Means& means) {
  Eigen::MatrixXd x = data.inputs;
  if (variant.center_x) x.rowwise() -= means.input_mean.transpose();
  if (variant.transform == HebbTransform::SignQuantize)
    x = x.unaryExpr([](double v) { return sign_of(v); });
  return x;
}

Eigen::MatrixXd hatted_targets(const Dataset& data, const HebbVariant& variant,
                               const Means& means) {
  Eigen::MatrixXd y = data.targets.cast<double>();
  if (variant.center_y) y.rowwise() -= means.target_mean.transpose();
  return y;
}

void check_variant(const HebbVariant& variant) {
  if (variant.transform == HebbTransform::Sparsify &&
      (variant.rho <= 0.0 || variant.rho > 1.0))
    throw ConfigError("hebb: sparsify requires 0 < rho <= 1");
}

// Deterministic per-row mask stream so a single row is regenerable.
template <typename Row>
void apply_sparsify_row(Row&& row, const HebbVariant& variant, long row_index) {
  CounterRng rng(variant.mask_seed.child({static_cast<std::uint64_t>(row_index)}));
  for (long j = 0; j < row.size(); ++j)
    if (!rng.bernoulli(variant.rho)) row(j) = 0.0;
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double kl_loss(const Eigen::MatrixXd& probs, const BitMatrix& targets) {
  double total = 0.0;
  for (long k = 0; k < probs.rows(); ++k) {
    for (long i = 0; i < probs.cols(); ++i) {
      const double o = std::min(std::max(probs(k, i), 1e-15), 1.0 - 1e-15);
      total += targets(k, i) ? -std::log(o) : -std::log1p(-o);
    }
  }
  return total / (static_cast<double>(probs.rows()) * static_cast<double>(probs.cols()));
}

}  // namespace

Means resolve_means(const Dataset& data) {
  Means means;
  const auto& prov = data.provenance;
  const long n = data.input_dim();
  const long m = data.target_dim();
  const long K = data.memories();
  if (K < 1) throw ConfigError("resolve_means: empty dataset has no means");

  if (prov.input_dist) {
    const auto& d = *prov.input_dist;
    double mu = 0.0;
    switch (d.kind) {
      case InputKind::GaussianIid:
      case InputKind::SphereUniform:
        mu = 0.0;
        break;
      case InputKind::RademacherIid:
        mu = d.binary_as_01 ? 0.5 : 0.0;
        break;
      case InputKind::BalancedBinary: {
        const double ones = static_cast<double>(sparse_ones_count(0.5, n));
        mu = d.binary_as_01 ? ones / static_cast<double>(n)
                            : (2.0 * ones - static_cast<double>(n)) / static_cast<double>(n);
        break;
      }
      case InputKind::SparseBernoulli:
        mu = d.p;
        break;
      case InputKind::SparseUniform:
        mu = static_cast<double>(sparse_ones_count(d.p, n)) / static_cast<double>(n);
        break;
    }
    means.input_mean = Eigen::VectorXd::Constant(n, mu);
  } else {
    means.input_mean = data.inputs.colwise().mean();
  }

  if (prov.target_dist) {
    const auto& d = *prov.target_dist;
    const double mu = d.kind == TargetKind::BernoulliIid
                          ? d.q
                          : static_cast<double>(d.s) / static_cast<double>(K);
    means.target_mean = Eigen::VectorXd::Constant(m, mu);
  } else {
    means.target_mean = data.targets.cast<double>().colwise().mean();
  }
  return means;
}

Eigen::VectorXd bias_vector(const BiasPolicy& bias, long input_dim, long output_dim,
                            const Means& means) {
  switch (bias.kind) {
    case BiasKind::SubgaussianWindow: {
      if (bias.gamma <= 0.0) throw ConfigError("bias: gamma must be positive");
      const double b = 0.75 * bias.gamma * bias.gamma * static_cast<double>(input_dim);
      return Eigen::VectorXd::Constant(output_dim, b);
    }
    case BiasKind::BinomialWindow: {
      // n p / 6 with p read off the (possibly non-homogeneous) input mean.
      const double np = means.input_mean.sum();
      if (np <= 0.0) throw ConfigError("bias: binomial window needs positive input density");
      return Eigen::VectorXd::Constant(output_dim, np / 6.0);
    }
    case BiasKind::Explicit:
      if (bias.value.size() != output_dim)
        throw ConfigError("bias: explicit vector length must equal output dimension");
      return bias.value;
  }
  throw ConfigError("bias: unknown policy");
}

ThresholdMap hebb_train(const Dataset& data, const HebbVariant& variant,
                        const BiasPolicy& bias, const std::optional<Means>& known_means) {
  validate_dataset(data);
  check_variant(variant);
  const Means means = known_means ? *known_means : resolve_means(data);
  if (means.input_mean.size() != data.input_dim() ||
      means.target_mean.size() != data.target_dim())
    throw ConfigError("hebb_train: means have wrong dimensions");

  const Eigen::MatrixXd x_hat = hatted_inputs(data, variant, means);
  const Eigen::MatrixXd y_hat = hatted_targets(data, variant, means);

  ThresholdMap map;
  map.weights.noalias() = y_hat.transpose() * x_hat;
  if (variant.transform == HebbTransform::Sparsify)
    for (long i = 0; i < map.weights.rows(); ++i)
      apply_sparsify_row(map.weights.row(i), variant, i);
  map.bias = bias_vector(bias, data.input_dim(), data.target_dim(), means);
  map.feature = FeatureSpec{FeatureKind::Identity, 1, false, data.input_dim()};
  return map;
}

TrainReport perceptron_train(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& labels_pm,
                             long max_epochs) {
  const long K = inputs.rows();
  const long n = inputs.cols();
  if (labels_pm.size() != K) throw ConfigError("perceptron_train: label count mismatch");
  for (long k = 0; k < K; ++k)
    if (labels_pm(k) != 1.0 && labels_pm(k) != -1.0)
      throw ConfigError("perceptron_train: labels must be +-1");
  if (max_epochs < 1) throw ConfigError("perceptron_train: max_epochs must be >= 1");

  Eigen::VectorXd w = Eigen::VectorXd::Zero(n + 1);  // augmented: (weights, bias unit)
  TrainReport report;
  for (long epoch = 1; epoch <= max_epochs; ++epoch) {
    long mistakes = 0;
    for (long k = 0; k < K; ++k) {
      const double score = w.head(n).dot(inputs.row(k)) + w(n);
      if (labels_pm(k) * score <= 0.0) {
        w.head(n) += labels_pm(k) * inputs.row(k).transpose();
        w(n) += labels_pm(k);
        ++mistakes;
      }
    }
    report.epochs_used = epoch;
    report.mistake_count += mistakes;
    if (mistakes == 0) {
      report.converged = true;
      break;
    }
  }
  Eigen::MatrixXd weight_row(1, n);
  weight_row.row(0) = w.head(n).transpose();
  Eigen::VectorXd bias(1);
  bias(0) = -w(n);
  report.map = make_linear_map(std::move(weight_row), std::move(bias));
  return report;
}

TrainReport gd_logistic_train(const Dataset& data, double eta, long epochs,
                              double loss_threshold, SeedSpec seed) {
  validate_dataset(data);
  if (eta <= 0.0) throw ConfigError("gd_logistic_train: eta must be positive");
  if (epochs < 1) throw ConfigError("gd_logistic_train: epochs must be >= 1");
  const long K = data.memories();
  const long n = data.input_dim();
  const long m = data.target_dim();

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  std::vector<long> order(static_cast<std::size_t>(K));
  std::iota(order.begin(), order.end(), 0L);

  TrainReport report;
  for (long epoch = 1; epoch <= epochs; ++epoch) {
    CounterRng rng(seed.child({static_cast<std::uint64_t>(epoch)}));
    for (long j = K - 1; j > 0; --j) {
      const long pick = static_cast<long>(rng.uniform_index(static_cast<std::uint64_t>(j + 1)));
      std::swap(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(pick)]);
    }
    for (long k : order) {
      const Eigen::VectorXd z = w * data.inputs.row(k).transpose() - b;
      Eigen::VectorXd err(m);
      for (long i = 0; i < m; ++i)
        err(i) = static_cast<double>(data.targets(k, i)) - logistic(z(i));
      w.noalias() += eta * err * data.inputs.row(k);
      b.noalias() -= eta * err;
    }
    const Eigen::MatrixXd z_all =
        (data.inputs * w.transpose()).rowwise() - b.transpose();
    const Eigen::MatrixXd probs = z_all.unaryExpr([](double z) { return logistic(z); });
    report.final_loss = kl_loss(probs, data.targets);
    report.epochs_used = epoch;
    if (!std::isfinite(report.final_loss))
      throw NumericError("gd_logistic_train: loss diverged at epoch " + std::to_string(epoch));
    if (report.final_loss <= loss_threshold) {
      report.converged = true;
      break;
    }
  }
  report.map = make_linear_map(std::move(w), std::move(b));
  return report;
}

WindowedRecall recall_errors_in_norm_window(const ThresholdMap& map, const Dataset& data,
                                            double gamma, double beta) {
  if (gamma <= 0.0 || beta < gamma)
    throw ConfigError("norm window: need 0 < gamma <= beta");
  const double root_n = std::sqrt(static_cast<double>(data.input_dim()));
  std::vector<long> keep;
  for (long k = 0; k < data.memories(); ++k) {
    const double norm = data.inputs.row(k).norm();
    if (norm >= gamma * root_n && norm <= beta * root_n) keep.push_back(k);
  }
  Dataset windowed;
  windowed.inputs.resize(static_cast<long>(keep.size()), data.input_dim());
  windowed.targets.resize(static_cast<long>(keep.size()), data.target_dim());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    windowed.inputs.row(static_cast<long>(r)) = data.inputs.row(keep[r]);
    windowed.targets.row(static_cast<long>(r)) = data.targets.row(keep[r]);
  }
  windowed.provenance = data.provenance;
  WindowedRecall out;
  out.rows_outside_window = data.memories() - static_cast<long>(keep.size());
  if (!keep.empty()) out.in_window = recall_errors(map, windowed);
  else out.in_window.per_coordinate_errors = Eigen::VectorXi::Zero(map.output_dim());
  return out;
}

SignalNoise signal_noise(const Dataset& data, const HebbVariant& variant, long k, long i,
                         const std::optional<Means>& known_means) {
  validate_dataset(data);
  check_variant(variant);
  if (k < 0 || k >= data.memories()) throw ConfigError("signal_noise: k out of range");
  if (i < 0 || i >= data.target_dim()) throw ConfigError("signal_noise: i out of range");
  const Means means = known_means ? *known_means : resolve_means(data);
  Eigen::MatrixXd x_hat = hatted_inputs(data, variant, means);
  const Eigen::MatrixXd y_hat = hatted_targets(data, variant, means);
  if (variant.transform == HebbTransform::Sparsify) {
    // The mask multiplies W row i, i.e. every example's contribution to it.
    Eigen::RowVectorXd mask = Eigen::RowVectorXd::Ones(x_hat.cols());
    apply_sparsify_row(mask, variant, i);
    x_hat.array().rowwise() *= mask.array();
  }
  const Eigen::VectorXd raw_x = data.inputs.row(k).transpose();
  const Eigen::VectorXd dots = x_hat * raw_x;  // <phi(x_j), x_k> for every j
  SignalNoise out;
  out.signal = y_hat(k, i) * dots(k);
  for (long j = 0; j < data.memories(); ++j)
    if (j != k) out.noise += y_hat(j, i) * dots(j);
  out.total = out.signal + out.noise;
  return out;
}

}  // namespace sparsemap
