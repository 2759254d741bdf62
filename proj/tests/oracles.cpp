#include "oracles.hpp"

#include <vector>

namespace sparsemap::testing {

namespace {

bool consistent_sides(const Eigen::VectorXd& side, const BitVector& labels,
                      const std::vector<char>& in_subset, double tol) {
  bool pos_ok = true;
  bool neg_ok = true;
  for (long k = 0; k < side.size(); ++k) {
    if (in_subset[static_cast<std::size_t>(k)]) continue;
    if (std::abs(side(k)) <= tol) return false;  // ambiguous, let another subset decide
    const bool above = side(k) > 0.0;
    if (labels(k) ? !above : above) pos_ok = false;
    if (labels(k) ? above : !above) neg_ok = false;
    if (!pos_ok && !neg_ok) return false;
  }
  return pos_ok || neg_ok;
}

}  // namespace

bool exhaustive_separable(const Eigen::MatrixXd& points, const BitVector& labels) {
  const long N = points.rows();
  const long n = points.cols();
  bool has0 = false;
  bool has1 = false;
  for (long k = 0; k < N; ++k) (labels(k) ? has1 : has0) = true;
  if (!has0 || !has1) return true;

  if (N <= n + 1) {
    Eigen::MatrixXd diffs(N - 1, n);
    for (long k = 1; k < N; ++k) diffs.row(k - 1) = points.row(k) - points.row(0);
    if (Eigen::FullPivLU<Eigen::MatrixXd>(diffs).rank() == N - 1) return true;
  }
  if (N <= n) return false;  // affinely dependent small set; not in general position

  const double scale = points.cwiseAbs().maxCoeff() + 1.0;
  const double tol = 1e-10 * scale;

  std::vector<long> comb(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) comb[static_cast<std::size_t>(i)] = i;
  std::vector<char> in_subset(static_cast<std::size_t>(N), 0);
  for (;;) {
    // Hyperplane through the n chosen points: normal spans the null space of
    // the difference matrix.
    Eigen::VectorXd normal;
    bool usable = true;
    if (n == 1) {
      normal = Eigen::VectorXd::Ones(1);
    } else {
      Eigen::MatrixXd diffs(n - 1, n);
      for (long i = 1; i < n; ++i)
        diffs.row(i - 1) = points.row(comb[static_cast<std::size_t>(i)]) -
                           points.row(comb[0]);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeFullV);
      if (n >= 2 && svd.rank() < n - 1) usable = false;  // degenerate subset
      normal = svd.matrixV().col(n - 1);
    }
    if (usable) {
      const double offset = normal.dot(points.row(comb[0]).transpose());
      Eigen::VectorXd side = points * normal;
      side.array() -= offset;
      std::fill(in_subset.begin(), in_subset.end(), 0);
      for (long i : comb) in_subset[static_cast<std::size_t>(i)] = 1;
      if (consistent_sides(side, labels, in_subset, tol)) return true;
    }
    long pos = n - 1;
    while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == N - n + pos) --pos;
    if (pos < 0) break;
    ++comb[static_cast<std::size_t>(pos)];
    for (long i = pos + 1; i < n; ++i)
      comb[static_cast<std::size_t>(i)] = comb[static_cast<std::size_t>(i - 1)] + 1;
  }
  return false;
}

}  // namespace sparsemap::testing
