#pragma once

#include <Eigen/Dense>

namespace banditgame {

// Minimal dense two-phase simplex for small linear programs:
//   minimize c'x  subject to  A x = b,  x >= 0.
// Bland's rule throughout, so it cannot cycle.  Intended for the
// core-feasibility problems here (thousands of rows at most), not as a
// general-purpose solver.

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

LpSolution solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace banditgame
