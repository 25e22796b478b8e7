#pragma once

#include <vector>

#include <Eigen/Dense>

#include "volrig/errors.hpp"

namespace volrig {

enum class LpStatus { Optimal, Infeasible, Unbounded };

enum class RowSense { LessEqual, Equal, GreaterEqual };

/// maximize objective.x subject to lhs x (sense) rhs, x >= 0.
struct LpProblem {
  Eigen::VectorXd objective;
  Eigen::MatrixXd lhs;
  std::vector<RowSense> sense;
  Eigen::VectorXd rhs;
};

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;
  Eigen::VectorXd x;
};

/// Dense two-phase primal simplex with Bland's rule (terminates on the
/// degenerate problems produced by the flex module).  Problem sizes here
/// are tiny (tens of variables), so no sparsity or revised form is used.
LpSolution solve_lp(const LpProblem& problem, int max_iterations = 50000);

/// Phase-one feasibility check only.
bool lp_feasible(const LpProblem& problem, int max_iterations = 50000);

}  // namespace volrig
