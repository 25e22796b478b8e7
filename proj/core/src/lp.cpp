#include "volrig/lp.hpp"

#include <cmath>
#include <limits>

namespace volrig {

namespace {

constexpr double kEps = 1e-11;

struct Tableau {
  Eigen::MatrixXd t;        // rows x (cols + 1); last column is the rhs
  std::vector<int> basis;   // basic variable of each row
  int rows = 0;
  int cols = 0;

  double& rhs(int i) { return t(i, cols); }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int i = 0; i < rows; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  }
};

/// Runs Bland-rule simplex iterations for `minimize cost.x` on a tableau
/// that is already in basic feasible form.  Returns false when unbounded.
bool iterate(Tableau& tab, Eigen::VectorXd cost, int max_iterations) {
  // Reduced-cost row: cost minus the basic-cost combination of the rows.
  Eigen::RowVectorXd red(tab.cols + 1);
  red.head(tab.cols) = cost.transpose();
  red[tab.cols] = 0.0;
  for (int i = 0; i < tab.rows; ++i) {
    const double cb = cost[tab.basis[i]];
    if (cb != 0.0) red -= cb * tab.t.row(i);
  }
  for (int iter = 0; iter < max_iterations; ++iter) {
    int enter = -1;
    for (int j = 0; j < tab.cols; ++j) {
      if (red[j] < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;  // optimal
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tab.rows; ++i) {
      const double a = tab.t(i, enter);
      if (a > kEps) {
        const double ratio = tab.rhs(i) / a;
        if (ratio < best - kEps ||
            (ratio < best + kEps && (leave < 0 || tab.basis[i] < tab.basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded
    tab.pivot(leave, enter);
    const double f = red[enter];
    if (f != 0.0) red -= f * tab.t.row(leave);
  }
  throw SolverFailure("simplex iteration cap exceeded");
}

struct Phase1 {
  Tableau tab;
  int n_structural = 0;
  int n_slack = 0;
  int art_begin = 0;
  bool feasible = false;
};

Phase1 run_phase1(const LpProblem& p, int max_iterations) {
  const int m = static_cast<int>(p.lhs.rows());
  const int n = static_cast<int>(p.lhs.cols());
  if (p.rhs.size() != m || static_cast<int>(p.sense.size()) != m ||
      (p.objective.size() != n))
    throw DimensionMismatch("linear program blocks have inconsistent sizes");

  // Normalize to rhs >= 0 and count slack columns.
  Eigen::MatrixXd a = p.lhs;
  Eigen::VectorXd b = p.rhs;
  std::vector<RowSense> sense = p.sense;
  for (int i = 0; i < m; ++i) {
    if (b[i] < 0.0) {
      a.row(i) *= -1.0;
      b[i] *= -1.0;
      if (sense[i] == RowSense::LessEqual) sense[i] = RowSense::GreaterEqual;
      else if (sense[i] == RowSense::GreaterEqual) sense[i] = RowSense::LessEqual;
    }
  }
  int n_slack = 0;
  for (auto s : sense)
    if (s != RowSense::Equal) ++n_slack;

  Phase1 ph;
  ph.n_structural = n;
  ph.n_slack = n_slack;
  ph.art_begin = n + n_slack;
  Tableau& tab = ph.tab;
  tab.rows = m;
  tab.cols = n + n_slack + m;  // one artificial per row (unused ones stay zero)
  tab.t = Eigen::MatrixXd::Zero(m, tab.cols + 1);
  tab.basis.assign(m, -1);

  int slack_at = n;
  for (int i = 0; i < m; ++i) {
    tab.t.block(i, 0, 1, n) = a.row(i);
    tab.rhs(i) = b[i];
    if (sense[i] == RowSense::LessEqual) {
      tab.t(i, slack_at) = 1.0;
      tab.basis[i] = slack_at++;
    } else if (sense[i] == RowSense::GreaterEqual) {
      tab.t(i, slack_at++) = -1.0;
    }
    if (tab.basis[i] < 0) {
      tab.t(i, ph.art_begin + i) = 1.0;
      tab.basis[i] = ph.art_begin + i;
    }
  }

  Eigen::VectorXd art_cost = Eigen::VectorXd::Zero(tab.cols);
  art_cost.segment(ph.art_begin, m).setOnes();
  if (!iterate(tab, art_cost, max_iterations))
    throw SolverFailure("phase-one simplex reported an unbounded auxiliary problem");
  double infeasibility = 0.0;
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] >= ph.art_begin) infeasibility += tab.rhs(i);
  ph.feasible = infeasibility <= 1e-8;
  return ph;
}

}  // namespace

bool lp_feasible(const LpProblem& problem, int max_iterations) {
  return run_phase1(problem, max_iterations).feasible;
}

LpSolution solve_lp(const LpProblem& problem, int max_iterations) {
  Phase1 ph = run_phase1(problem, max_iterations);
  if (!ph.feasible) return LpSolution{LpStatus::Infeasible, 0.0, {}};
  Tableau& tab = ph.tab;

  // Drive leftover artificials out of the (degenerate) basis; rows that
  // offer no non-artificial pivot are redundant and are dropped.
  std::vector<int> keep;
  for (int i = 0; i < tab.rows; ++i) {
    if (tab.basis[i] < ph.art_begin) {
      keep.push_back(i);
      continue;
    }
    int col = -1;
    for (int j = 0; j < ph.art_begin; ++j) {
      if (std::abs(tab.t(i, j)) > kEps) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      tab.pivot(i, col);
      keep.push_back(i);
    }
  }
  if (static_cast<int>(keep.size()) != tab.rows) {
    Eigen::MatrixXd trimmed(keep.size(), tab.t.cols());
    std::vector<int> basis;
    for (std::size_t r = 0; r < keep.size(); ++r) {
      trimmed.row(r) = tab.t.row(keep[r]);
      basis.push_back(tab.basis[keep[r]]);
    }
    tab.t = std::move(trimmed);
    tab.basis = std::move(basis);
    tab.rows = static_cast<int>(keep.size());
  }
  // Artificial columns are dead from here on: zero them so they can never
  // re-enter the basis.
  tab.t.middleCols(ph.art_begin, tab.cols - ph.art_begin).setZero();

  // Phase two: minimize -objective over structural + slack columns.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(tab.cols);
  cost.head(ph.n_structural) = -problem.objective;
  if (!iterate(tab, cost, max_iterations)) return LpSolution{LpStatus::Unbounded, 0.0, {}};

  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x = Eigen::VectorXd::Zero(ph.n_structural);
  for (int i = 0; i < tab.rows; ++i)
    if (tab.basis[i] < ph.n_structural) sol.x[tab.basis[i]] = tab.rhs(i);
  sol.objective = problem.objective.dot(sol.x);
  return sol;
}

}  // namespace volrig
