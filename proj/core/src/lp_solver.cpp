#include "sparsemap/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sparsemap/errors.hpp"

namespace sparsemap::lp {

namespace {

struct Tableau {
  Eigen::MatrixXd t;             // (rows+1) x (cols+1); last row reduced costs, last col rhs
  std::vector<long> basis;       // basic column per constraint row
  std::vector<char> enterable;   // column eligibility for pricing
  long rows = 0;
  long cols = 0;

  double& rhs(long i) { return t(i, cols); }
  double& cost(long j) { return t(rows, j); }

  void pivot(long i, long j) {
    t.row(i) /= t(i, j);
    const Eigen::RowVectorXd prow = t.row(i);
    Eigen::VectorXd pcol = t.col(j);
    pcol(i) = 0.0;
    t.noalias() -= pcol * prow;
    t.col(j).setZero();
    t(i, j) = 1.0;
    basis[static_cast<std::size_t>(i)] = j;
  }
};

enum class LoopResult { Converged, Unbounded };

LoopResult run_simplex(Tableau& tb, const Options& opt, long max_iter, long* iterations,
                       double early_stop = std::numeric_limits<double>::quiet_NaN()) {
  // Bland's rule guarantees escape from degenerate cycles but walks slowly,
  // so it engages after a stall streak and hands back to Dantzig pricing as
  // soon as the objective moves again.
  bool bland = false;
  long stalls = 0;
  for (;;) {
    if (!std::isnan(early_stop) && tb.cost(tb.cols) >= early_stop)
      return LoopResult::Converged;
    if (++*iterations > max_iter)
      throw SolverError("simplex iteration cap exceeded (" + std::to_string(max_iter) +
                        "); problem is numerically degenerate");
    long enter = -1;
    if (bland) {
      for (long j = 0; j < tb.cols; ++j) {
        if (tb.enterable[static_cast<std::size_t>(j)] && tb.cost(j) < -opt.cost_tol) {
          enter = j;
          break;
        }
      }
    } else {
      // Steepest-edge pricing: the tableau column is B^-1 A_j, so the exact
      // edge steepness is cost_j / |col_j|. Dantzig pricing zigzags badly on
      // margin LPs with thousands of near-parallel rows.
      double best = -opt.cost_tol;
      for (long j = 0; j < tb.cols; ++j) {
        if (!tb.enterable[static_cast<std::size_t>(j)]) continue;
        const double cj = tb.cost(j);
        if (cj >= -opt.cost_tol) continue;
        const double steep = cj / std::sqrt(1.0 + tb.t.col(j).head(tb.rows).squaredNorm());
        if (steep < best) {
          best = steep;
          enter = j;
        }
      }
    }
    if (enter < 0) return LoopResult::Converged;

    long leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (long i = 0; i < tb.rows; ++i) {
      const double a = tb.t(i, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(tb.rhs(i), 0.0) / a;
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        leave = i;
      } else if (ratio < best_ratio + 1e-12 && leave >= 0) {
        if (bland) {
          // exact smallest-index tie break, required for Bland's guarantee
          if (tb.basis[static_cast<std::size_t>(i)] < tb.basis[static_cast<std::size_t>(leave)])
            leave = i;
        } else if (a > tb.t(leave, enter)) {
          leave = i;  // prefer the larger pivot element for stability
        }
      }
    }
    if (leave < 0) return LoopResult::Unbounded;

    const double before = tb.cost(tb.cols);
    tb.pivot(leave, enter);
    const double progress_tol = 1e-12 * (1.0 + std::abs(before));
    if (tb.cost(tb.cols) > before + progress_tol) {
      stalls = 0;
      bland = false;
    } else if (++stalls >= opt.bland_after_stalls) {
      bland = true;
    }
  }
}

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

Solution solve(const Problem& p, const Options& opt) {
  const long n = p.objective.size();
  const long mu = p.a_ub.rows();
  const long me = p.a_eq.rows();
  if (mu > 0 && p.a_ub.cols() != n) throw ConfigError("lp: a_ub column count mismatch");
  if (me > 0 && p.a_eq.cols() != n) throw ConfigError("lp: a_eq column count mismatch");
  if (p.b_ub.size() != mu || p.b_eq.size() != me) throw ConfigError("lp: rhs length mismatch");

  const long rows = mu + me;
  long n_art = me;
  for (long i = 0; i < mu; ++i)
    if (p.b_ub(i) < 0.0) ++n_art;
  const long art_start = n + mu;
  const long cols = n + mu + n_art;

  Tableau tb;
  tb.rows = rows;
  tb.cols = cols;
  tb.t = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  tb.basis.assign(static_cast<std::size_t>(rows), -1);
  tb.enterable.assign(static_cast<std::size_t>(cols), 1);

  std::vector<double> eq_sign(static_cast<std::size_t>(me), 1.0);
  long art = art_start;
  for (long i = 0; i < mu; ++i) {
    if (p.b_ub(i) >= 0.0) {
      if (n > 0) tb.t.row(i).head(n) = p.a_ub.row(i);
      tb.t(i, n + i) = 1.0;
      tb.rhs(i) = p.b_ub(i);
      tb.basis[static_cast<std::size_t>(i)] = n + i;
    } else {
      if (n > 0) tb.t.row(i).head(n) = -p.a_ub.row(i);
      tb.t(i, n + i) = -1.0;
      tb.t(i, art) = 1.0;
      tb.rhs(i) = -p.b_ub(i);
      tb.basis[static_cast<std::size_t>(i)] = art++;
    }
  }
  for (long e = 0; e < me; ++e) {
    const long i = mu + e;
    const double sign = p.b_eq(e) >= 0.0 ? 1.0 : -1.0;
    eq_sign[static_cast<std::size_t>(e)] = sign;
    if (n > 0) tb.t.row(i).head(n) = sign * p.a_eq.row(e);
    tb.t(i, art) = 1.0;
    tb.rhs(i) = sign * p.b_eq(e);
    tb.basis[static_cast<std::size_t>(i)] = art++;
  }

  if (opt.rhs_perturbation > 0.0) {
    // Golden-ratio sequence keeps the perturbation deterministic and spread.
    double frac = 0.0;
    for (long i = 0; i < rows; ++i) {
      frac += 0.6180339887498949;
      frac -= std::floor(frac);
      tb.rhs(i) += opt.rhs_perturbation * (0.5 + 0.5 * frac) * (1.0 + std::abs(tb.rhs(i)));
    }
  }

  const long max_iter =
      opt.max_iterations > 0 ? opt.max_iterations : 50 * (rows + cols) + 10000;

  Solution sol;
  sol.iterations = 0;

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials.
    tb.t.row(rows).setZero();
    for (long j = art_start; j < cols; ++j) tb.cost(j) = 1.0;
    for (long i = 0; i < rows; ++i)
      if (tb.basis[static_cast<std::size_t>(i)] >= art_start) tb.t.row(rows) -= tb.t.row(i);
    if (run_simplex(tb, opt, max_iter, &sol.iterations) == LoopResult::Unbounded)
      throw SolverError("phase 1 reported unbounded; tableau is corrupt");
    const double infeasibility = -tb.cost(cols);
    if (infeasibility > opt.feasibility_tol) {
      sol.status = Status::Infeasible;
      sol.x = Eigen::VectorXd::Zero(n);
      return sol;
    }
    // Drive basic artificials out where a non-artificial pivot exists;
    // rows with none are redundant and stay parked at zero.
    for (long i = 0; i < rows; ++i) {
      if (tb.basis[static_cast<std::size_t>(i)] < art_start) continue;
      for (long j = 0; j < art_start; ++j) {
        if (std::abs(tb.t(i, j)) > opt.pivot_tol) {
          tb.pivot(i, j);
          ++sol.iterations;
          break;
        }
      }
    }
  }

  // Phase 2: original objective (minimize -objective), artificials locked out.
  for (long j = art_start; j < cols; ++j) tb.enterable[static_cast<std::size_t>(j)] = 0;
  tb.t.row(rows).setZero();
  if (n > 0) tb.t.row(rows).head(n) = -p.objective;
  for (long i = 0; i < rows; ++i) {
    const long bj = tb.basis[static_cast<std::size_t>(i)];
    if (bj < n) {
      const double cb = -p.objective(bj);
      if (cb != 0.0) tb.t.row(rows) -= cb * tb.t.row(i);
    }
  }
  if (run_simplex(tb, opt, max_iter, &sol.iterations, opt.early_stop_objective) ==
      LoopResult::Unbounded) {
    sol.status = Status::Unbounded;
    sol.x = Eigen::VectorXd::Zero(n);
    return sol;
  }

  sol.status = Status::Optimal;
  sol.x = Eigen::VectorXd::Zero(n);
  for (long i = 0; i < rows; ++i) {
    const long bj = tb.basis[static_cast<std::size_t>(i)];
    if (bj < n) sol.x(bj) = std::max(tb.rhs(i), 0.0);
  }
  sol.objective = n > 0 ? p.objective.dot(sol.x) : 0.0;
  sol.dual_ub.resize(mu);
  for (long i = 0; i < mu; ++i) sol.dual_ub(i) = tb.cost(n + i);
  sol.dual_eq.resize(me);
  {
    long a = art_start;
    for (long i = 0; i < mu; ++i)
      if (p.b_ub(i) < 0.0) ++a;
    for (long e = 0; e < me; ++e)
      sol.dual_eq(e) = eq_sign[static_cast<std::size_t>(e)] * tb.cost(a + e);
  }
  return sol;
}

}  // namespace sparsemap::lp
