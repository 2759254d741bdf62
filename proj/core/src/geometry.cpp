#include "sparsemap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <string>

#include "sparsemap/errors.hpp"

namespace sparsemap {

namespace {

double row_l1_bound(const Eigen::MatrixXd& points) {
  double best = 0.0;
  for (long k = 0; k < points.rows(); ++k)
    best = std::max(best, points.row(k).lpNorm<1>());
  return 1.0 + best;
}

std::string row_bytes(const Eigen::MatrixXd& points, long k) {
  std::string s(static_cast<std::size_t>(points.cols()) * sizeof(double), '\0');
  for (long j = 0; j < points.cols(); ++j) {
    const double v = points(k, j);
    std::memcpy(s.data() + static_cast<std::size_t>(j) * sizeof(double), &v, sizeof(double));
  }
  return s;
}

}  // namespace

Eigen::MatrixXd hypercube_vertices(int n) {
  const long count = 1L << n;
  Eigen::MatrixXd points(count, n);
  for (long v = 0; v < count; ++v)
    for (int j = 0; j < n; ++j) points(v, j) = (v >> j) & 1 ? 1.0 : 0.0;
  return points;
}

SeparationCertificate max_margin_separable(const Eigen::MatrixXd& points,
                                           const BitVector& labels,
                                           const GeometryOptions& options) {
  const long N = points.rows();
  const long n = points.cols();
  if (labels.size() != N) throw ConfigError("max_margin_separable: label count mismatch");
  if (N < 1) throw ConfigError("max_margin_separable: needs at least one point");

  SeparationCertificate cert;
  cert.w = Eigen::VectorXd::Zero(n);

  // A point present in both classes is a one-point hull witness.
  {
    std::map<std::string, long> seen;
    for (long k = 0; k < N; ++k) {
      auto [it, inserted] = seen.try_emplace(row_bytes(points, k), k);
      if (!inserted && labels(it->second) != labels(k)) {
        HullWitness witness;
        witness.coefficients = Eigen::VectorXd::Zero(N);
        witness.coefficients(it->second) = 1.0;
        witness.coefficients(k) = 1.0;
        witness.common_point = points.row(k).transpose();
        cert.separable = false;
        cert.witness = std::move(witness);
        cert.raw_delta = 0.0;
        return cert;
      }
    }
  }

  const double bound = row_l1_bound(points);
  const double delta_cap = 2.0 * bound + 1.0;

  // Variables (all >= 0): w+ (n), w- (n), b+, b-, d+, d-.
  const long nv = 2 * n + 4;
  const long wp = 0, wm = n, bp = 2 * n, bm = 2 * n + 1, dp = 2 * n + 2, dm = 2 * n + 3;

  lp::Problem prob;
  prob.a_ub = Eigen::MatrixXd::Zero(N + nv, nv);
  prob.b_ub = Eigen::VectorXd::Zero(N + nv);
  prob.objective = Eigen::VectorXd::Zero(nv);
  prob.objective(dp) = 1.0;
  prob.objective(dm) = -1.0;

  for (long k = 0; k < N; ++k) {
    const double s = labels(k) ? 1.0 : -1.0;
    prob.a_ub.row(k).segment(wp, n) = -s * points.row(k);
    prob.a_ub.row(k).segment(wm, n) = s * points.row(k);
    prob.a_ub(k, bp) = s;
    prob.a_ub(k, bm) = -s;
    prob.a_ub(k, dp) = 1.0;
    prob.a_ub(k, dm) = -1.0;
  }
  for (long v = 0; v < nv; ++v) {
    prob.a_ub(N + v, v) = 1.0;
    prob.b_ub(N + v) = v < 2 * n ? 1.0 : (v < 2 * n + 2 ? bound : delta_cap);
  }

  lp::Options lp_opt = options.lp;
  if (options.early_verdict) lp_opt.early_stop_objective = 10.0 * options.margin_tol;
  const lp::Solution sol = lp::solve(prob, lp_opt);
  if (sol.status != lp::Status::Optimal)
    throw SolverError(std::string("margin LP ended ") + lp::to_string(sol.status));

  const double delta = sol.x(dp) - sol.x(dm);
  cert.raw_delta = delta;
  cert.w = sol.x.segment(wp, n) - sol.x.segment(wm, n);
  cert.b = sol.x(bp) - sol.x(bm);
  cert.separable = delta > options.margin_tol;

  const double wnorm = cert.w.norm();
  if (cert.separable) {
    if (wnorm > 0.0) {
      cert.w /= wnorm;
      cert.b /= wnorm;
      cert.margin = delta / wnorm;
    } else {
      // One-sided labelings separate on bias alone; margin stays at the LP bound.
      cert.margin = delta;
    }
    return cert;
  }

  cert.margin = 0.0;
  // Infeasibility witness: a common point of the two hulls.
  long n_pos = 0;
  for (long k = 0; k < N; ++k) n_pos += labels(k) != 0;
  const long n_neg = N - n_pos;
  if (n_pos > 0 && n_neg > 0) {
    lp::Problem hull;
    hull.objective = Eigen::VectorXd::Zero(N);
    hull.a_eq = Eigen::MatrixXd::Zero(n + 2, N);
    hull.b_eq = Eigen::VectorXd::Zero(n + 2);
    for (long k = 0; k < N; ++k) {
      const double s = labels(k) ? 1.0 : -1.0;
      hull.a_eq.col(k).head(n) = s * points.row(k).transpose();
      hull.a_eq(n, k) = labels(k) ? 1.0 : 0.0;
      hull.a_eq(n + 1, k) = labels(k) ? 0.0 : 1.0;
    }
    hull.b_eq(n) = 1.0;
    hull.b_eq(n + 1) = 1.0;
    const lp::Solution hs = lp::solve(hull, options.lp);
    if (hs.status == lp::Status::Optimal) {
      HullWitness witness;
      witness.coefficients = hs.x;
      witness.common_point = Eigen::VectorXd::Zero(n);
      for (long k = 0; k < N; ++k)
        if (labels(k)) witness.common_point += hs.x(k) * points.row(k).transpose();
      cert.witness = std::move(witness);
    }
  }
  return cert;
}

bool is_face(const Eigen::MatrixXd& points, const std::vector<long>& subset,
             const GeometryOptions& options) {
  const long N = points.rows();
  const long n = points.cols();
  if (subset.empty() || static_cast<long>(subset.size()) > N)
    throw ConfigError("is_face: subset size must be in [1, N]");
  std::vector<char> in_subset(static_cast<std::size_t>(N), 0);
  for (long i : subset) {
    if (i < 0 || i >= N) throw ConfigError("is_face: subset index out of range");
    in_subset[static_cast<std::size_t>(i)] = 1;
  }

  const double bound = row_l1_bound(points);
  const double delta_cap = 2.0 * bound + 1.0;
  const long strict = N - static_cast<long>(subset.size());

  // Variables (all >= 0): h+ (n), h- (n), a+, a-, d.
  const long nv = 2 * n + 3;
  const long hp = 0, hm = n, ap = 2 * n, am = 2 * n + 1, dv = 2 * n + 2;

  lp::Problem prob;
  prob.objective = Eigen::VectorXd::Zero(nv);
  prob.objective(dv) = 1.0;
  prob.a_eq = Eigen::MatrixXd::Zero(static_cast<long>(subset.size()), nv);
  prob.b_eq = Eigen::VectorXd::Zero(static_cast<long>(subset.size()));
  for (std::size_t r = 0; r < subset.size(); ++r) {
    const long i = subset[r];
    prob.a_eq.row(static_cast<long>(r)).segment(hp, n) = points.row(i);
    prob.a_eq.row(static_cast<long>(r)).segment(hm, n) = -points.row(i);
    prob.a_eq(static_cast<long>(r), ap) = -1.0;
    prob.a_eq(static_cast<long>(r), am) = 1.0;
  }
  prob.a_ub = Eigen::MatrixXd::Zero(strict + nv, nv);
  prob.b_ub = Eigen::VectorXd::Zero(strict + nv);
  long r = 0;
  for (long j = 0; j < N; ++j) {
    if (in_subset[static_cast<std::size_t>(j)]) continue;
    prob.a_ub.row(r).segment(hp, n) = points.row(j);
    prob.a_ub.row(r).segment(hm, n) = -points.row(j);
    prob.a_ub(r, ap) = -1.0;
    prob.a_ub(r, am) = 1.0;
    prob.a_ub(r, dv) = 1.0;
    ++r;
  }
  for (long v = 0; v < nv; ++v) {
    prob.a_ub(strict + v, v) = 1.0;
    prob.b_ub(strict + v) = v < 2 * n ? 1.0 : (v < 2 * n + 2 ? bound : delta_cap);
  }

  lp::Options lp_opt = options.lp;
  lp_opt.early_stop_objective = 10.0 * options.margin_tol;  // verdict-only objective
  const lp::Solution sol = lp::solve(prob, lp_opt);
  if (sol.status == lp::Status::Infeasible) return false;
  if (sol.status != lp::Status::Optimal)
    throw SolverError(std::string("face LP ended ") + lp::to_string(sol.status));
  return sol.x(dv) > options.margin_tol;
}

bool in_hull(const Eigen::VectorXd& point, const Eigen::MatrixXd& points,
             const GeometryOptions& options) {
  const long N = points.rows();
  const long n = points.cols();
  if (point.size() != n) throw ConfigError("in_hull: dimension mismatch");
  lp::Problem prob;
  prob.objective = Eigen::VectorXd::Zero(N);
  prob.a_eq = Eigen::MatrixXd::Zero(n + 1, N);
  prob.b_eq = Eigen::VectorXd::Zero(n + 1);
  prob.a_eq.topRows(n) = points.transpose();
  prob.a_eq.row(n).setOnes();
  prob.b_eq.head(n) = point;
  prob.b_eq(n) = 1.0;
  const lp::Solution sol = lp::solve(prob, options.lp);
  if (sol.status == lp::Status::Unbounded)
    throw SolverError("hull membership LP reported unbounded");
  return sol.status == lp::Status::Optimal;
}

long enumerate_threshold_dichotomies(int n, std::optional<long> ones_count,
                                     const GeometryOptions& options) {
  if (n < 1) throw ConfigError("enumerate_threshold_dichotomies: n must be >= 1");
  if (!ones_count && n > 4)
    throw ConfigError("enumerate_threshold_dichotomies: full enumeration needs n <= 4");
  if (ones_count && n > 5)
    throw ConfigError("enumerate_threshold_dichotomies: n must be <= 5");
  const long V = 1L << n;
  if (ones_count && (*ones_count < 0 || *ones_count > V))
    throw ConfigError("enumerate_threshold_dichotomies: ones_count out of range");
  const Eigen::MatrixXd points = hypercube_vertices(n);
  GeometryOptions verdict_options = options;
  verdict_options.early_verdict = true;  // counting needs verdicts only

  auto separable_mask = [&](std::uint64_t mask) {
    BitVector labels(V);
    for (long v = 0; v < V; ++v) labels(v) = (mask >> v) & 1U ? 1 : 0;
    return max_margin_separable(points, labels, verdict_options).separable;
  };

  long count = 0;
  if (!ones_count) {
    const std::uint64_t total = 1ULL << V;
    for (std::uint64_t mask = 0; mask < total; ++mask)
      if (separable_mask(mask)) ++count;
    return count;
  }

  // Enumerate truth tables with exactly k ones via subset combinations.
  const long k = *ones_count;
  if (k == 0) return separable_mask(0) ? 1 : 0;
  std::vector<long> comb(static_cast<std::size_t>(k));
  for (long i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::uint64_t mask = 0;
    for (long i : comb) mask |= 1ULL << i;
    if (separable_mask(mask)) ++count;
    long pos = k - 1;
    while (pos >= 0 && comb[static_cast<std::size_t>(pos)] == V - k + pos) --pos;
    if (pos < 0) break;
    ++comb[static_cast<std::size_t>(pos)];
    for (long i = pos + 1; i < k; ++i)
      comb[static_cast<std::size_t>(i)] = comb[static_cast<std::size_t>(i - 1)] + 1;
  }
  return count;
}

}  // namespace sparsemap
