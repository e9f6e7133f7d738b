#include "banditgame/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "banditgame/errors.hpp"

namespace banditgame {

namespace {

constexpr double kPivotEps = 1e-9;

// Tableau layout: rows 0..m-1 are constraints, row m holds the reduced
// costs with the negated objective value in the last column.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;

  int rows() const { return static_cast<int>(t.rows()) - 1; }
  int cols() const { return static_cast<int>(t.cols()) - 1; }

  void pivot(int row, int col) {
    t.row(row) /= t(row, col);
    for (int r = 0; r < t.rows(); ++r) {
      if (r == row) continue;
      const double factor = t(r, col);
      if (factor != 0.0) t.row(r) -= factor * t.row(row);
    }
    basis[static_cast<std::size_t>(row)] = col;
  }

  // Bland: entering = lowest-index column with a negative reduced
  // cost; leaving = lowest ratio, ties to the lowest basis index.
  // Returns false at optimality; throws on unboundedness.
  bool step() {
    const int m = rows();
    const int n = cols();
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (t(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      if (t(r, enter) > kPivotEps) {
        const double ratio = t(r, n) / t(r, enter);
        if (leave < 0 || ratio < best_ratio - kPivotEps ||
            (std::abs(ratio - best_ratio) <= kPivotEps &&
             basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("simplex: unbounded");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpSolution solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  if (b.size() != m || c.size() != n) throw InvalidInputError("solve_lp: shape mismatch");

  // Phase 1: minimize the sum of one artificial per row (rows flipped
  // so the right-hand side is non-negative).
  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    tab.t.block(r, 0, 1, n) = sign * a.row(r);
    tab.t(r, n + r) = 1.0;
    tab.t(r, n + m) = sign * b[r];
    tab.basis[static_cast<std::size_t>(r)] = n + r;
  }
  for (int r = 0; r < m; ++r) tab.t.row(m) -= tab.t.row(r);
  tab.t.block(m, n, 1, m).setZero();

  while (tab.step()) {
  }
  const double phase1 = -tab.t(m, n + m);
  if (phase1 > 1e-7 * (1.0 + b.cwiseAbs().maxCoeff())) {
    return LpSolution{LpStatus::kInfeasible, Eigen::VectorXd(), 0.0};
  }

  // Drive any leftover basic artificial out through a real column;
  // rows where no pivot exists are redundant and get dropped.
  std::vector<int> kept;
  for (int r = 0; r < m; ++r) {
    if (tab.basis[static_cast<std::size_t>(r)] >= n) {
      for (int j = 0; j < n; ++j) {
        if (std::abs(tab.t(r, j)) > kPivotEps) {
          tab.pivot(r, j);
          break;
        }
      }
    }
    if (tab.basis[static_cast<std::size_t>(r)] < n) kept.push_back(r);
  }

  // Phase 2: rebuild a compact tableau without artificial columns or
  // redundant rows, price the original objective, and iterate.
  const int m2 = static_cast<int>(kept.size());
  Tableau tab2;
  tab2.t = Eigen::MatrixXd::Zero(m2 + 1, n + 1);
  tab2.basis.resize(static_cast<std::size_t>(m2));
  for (int r2 = 0; r2 < m2; ++r2) {
    const int r = kept[static_cast<std::size_t>(r2)];
    tab2.t.block(r2, 0, 1, n) = tab.t.block(r, 0, 1, n);
    tab2.t(r2, n) = tab.t(r, n + m);
    tab2.basis[static_cast<std::size_t>(r2)] = tab.basis[static_cast<std::size_t>(r)];
  }
  tab2.t.block(m2, 0, 1, n) = c.transpose();
  for (int r2 = 0; r2 < m2; ++r2) {
    const int col = tab2.basis[static_cast<std::size_t>(r2)];
    const double cost = tab2.t(m2, col);
    if (cost != 0.0) tab2.t.row(m2) -= cost * tab2.t.row(r2);
  }

  LpSolution solution;
  try {
    while (tab2.step()) {
    }
  } catch (const std::runtime_error&) {
    solution.status = LpStatus::kUnbounded;
    return solution;
  }

  solution.status = LpStatus::kOptimal;
  solution.x = Eigen::VectorXd::Zero(n);
  for (int r2 = 0; r2 < m2; ++r2) {
    solution.x[tab2.basis[static_cast<std::size_t>(r2)]] = tab2.t(r2, n);
  }
  solution.objective = c.dot(solution.x);
  return solution;
}

}  // namespace banditgame
