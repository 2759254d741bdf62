#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "sparsemap/data_models.hpp"
#include "sparsemap/lp_solver.hpp"

namespace sparsemap {

/// Convex-combination coefficients exhibiting a common point of the two
/// class hulls (the infeasibility witness). coefficients(k) is supported on
/// each class and sums to 1 within each class.
struct HullWitness {
  Eigen::VectorXd coefficients;  // length N
  Eigen::VectorXd common_point;  // length n
};

struct SeparationCertificate {
  bool separable = false;
  Eigen::VectorXd w;     // unit 2-norm when nonzero
  double b = 0.0;
  double margin = 0.0;   // min point-to-hyperplane distance; 0 when inseparable
  std::optional<HullWitness> witness;
  double raw_delta = 0.0;  // LP optimum under the inf-norm normalization
};

struct GeometryOptions {
  double margin_tol = 1e-7;  // separable verdict threshold on the LP margin
  // Stop the margin LP as soon as the verdict is decided (delta clears the
  // threshold) instead of maximizing the margin. Verdicts are unchanged; the
  // reported margin becomes a valid lower bound instead of the maximum.
  bool early_verdict = false;
  lp::Options lp;
};

/// Margin-maximization LP: maximize delta s.t. s_k(<w,x_k> - b) >= delta with
/// |w|_inf <= 1 (s_k = +-1 recoding of labels). Separable iff delta* > tol.
/// Points duplicated across classes short-circuit to "not separable".
SeparationCertificate max_margin_separable(const Eigen::MatrixXd& points,
                                           const BitVector& labels,
                                           const GeometryOptions& options = {});

/// True iff conv(points[i] : i in subset) is a face of conv(points): some
/// hyperplane touches exactly the subset with every other point strictly
/// below. Strictness is realized as a maximized margin variable.
/// subset = all points is vacuously a face.
bool is_face(const Eigen::MatrixXd& points, const std::vector<long>& subset,
             const GeometryOptions& options = {});

/// LP feasibility of the convex-combination system (sum lambda_i x_i = point,
/// sum lambda = 1, lambda >= 0).
bool in_hull(const Eigen::VectorXd& point, const Eigen::MatrixXd& points,
             const GeometryOptions& options = {});

/// Counts Boolean functions on {0,1}^n realizable by a linear threshold gate,
/// optionally restricted to truth tables with exactly ones_count ones.
/// Full enumeration needs n <= 4; with ones_count, n <= 5.
long enumerate_threshold_dichotomies(int n, std::optional<long> ones_count = std::nullopt,
                                     const GeometryOptions& options = {});

/// All 2^n vertices of {0,1}^n, one per row, in binary counting order.
Eigen::MatrixXd hypercube_vertices(int n);

}  // namespace sparsemap
