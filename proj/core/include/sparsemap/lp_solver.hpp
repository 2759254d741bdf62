#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>

namespace sparsemap::lp {

/// maximize objective . x  subject to  a_ub x <= b_ub,  a_eq x = b_eq,  x >= 0.
/// Empty matrices stand for "no constraints of that kind".
struct Problem {
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  Eigen::VectorXd objective;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd dual_ub;  // multipliers for a_ub rows (>= 0)
  Eigen::VectorXd dual_eq;  // multipliers for a_eq rows (free sign)
  long iterations = 0;
};

struct Options {
  double feasibility_tol = 1e-8;
  double pivot_tol = 1e-9;
  double cost_tol = 1e-9;
  long max_iterations = 0;       // 0: 50 * (rows + cols) + 10000
  long bland_after_stalls = 60;  // degenerate steps before switching to Bland's rule
  // Deterministic relative rhs perturbation that breaks ties at degenerate
  // vertices (margin LPs start with every data row at rhs 0). Solutions stay
  // feasible for the unperturbed system to within feasibility_tol.
  double rhs_perturbation = 1e-10;
  // Stop phase 2 once the objective reaches this value (NaN: run to the
  // optimum). The returned point is feasible but possibly suboptimal; for
  // verdict-style callers that only test "objective > tol" this is exact.
  double early_stop_objective = std::numeric_limits<double>::quiet_NaN();
};

/// Two-phase primal simplex on a dense tableau. Dantzig pricing with Bland's
/// rule engaged after a stall streak, which protects against cycling.
/// Throws SolverError if the iteration cap is hit (degenerate numerics).
Solution solve(const Problem& problem, const Options& options = {});

const char* to_string(Status status);

}  // namespace sparsemap::lp
