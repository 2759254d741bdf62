#pragma once

#include <Eigen/Dense>
#include <filesystem>

#include "sparsemap/data_models.hpp"

namespace sparsemap {

enum class FeatureKind { Identity, Tensor };

/// Identity passes x through. Tensor expands x into pure monomials x^I over
/// index subsets I: |I| = d when homogeneous, 1 <= |I| <= d otherwise.
struct FeatureSpec {
  FeatureKind kind = FeatureKind::Identity;
  int degree = 1;
  bool homogeneous = false;
  long base_n = 0;

  [[nodiscard]] long feature_dim() const;
};

/// Componentwise Heaviside step with the fixed convention h(0) = 1.
/// Throws NumericError on NaN.
std::uint8_t heaviside(double z);

/// Monomial features of x in lexicographic order on the sorted index tuples,
/// e.g. n=3, d<=2: (0), (0,1), (0,2), (1), (1,2), (2).
Eigen::VectorXd tensor_expand(const Eigen::VectorXd& x, const FeatureSpec& spec);

/// x |-> h(W phi(x) - b), each output coordinate a linear threshold function
/// of the features.
struct ThresholdMap {
  Eigen::MatrixXd weights;  // m x feature_dim
  Eigen::VectorXd bias;     // m
  FeatureSpec feature;

  [[nodiscard]] long output_dim() const { return weights.rows(); }
};

/// Checks weight/bias/feature dimension consistency; throws ConfigError.
void validate_map(const ThresholdMap& map);

/// Plain linear map h(Wx - b) with an identity feature spec.
ThresholdMap make_linear_map(Eigen::MatrixXd weights, Eigen::VectorXd bias);

BitVector apply_map(const ThresholdMap& map, const Eigen::VectorXd& x);

/// Applies the map to every dataset row; rows of the result are F(x_k).
BitMatrix apply_map_all(const ThresholdMap& map, const Eigen::MatrixXd& inputs);

struct RecallReport {
  long total_bit_errors = 0;
  Eigen::VectorXi per_coordinate_errors;  // length m
  long exact_rows = 0;                    // count of k with F(x_k) = y_k
};

RecallReport recall_errors(const ThresholdMap& map, const Dataset& data);

/// Expands every input row; provenance is retagged so that downstream
/// consumers fall back to empirical feature means except for distributions
/// whose pure monomials are exactly zero-mean by symmetry.
Dataset expand_dataset(const Dataset& data, const FeatureSpec& spec);

// JSON layout: {"m":, "n":, "feature": {...}, "W": row-major, "b": [...]}.
void save_map_json(const ThresholdMap& map, const std::filesystem::path& path);
ThresholdMap load_map_json(const std::filesystem::path& path);

}  // namespace sparsemap
