#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "banditgame/bandit_env.hpp"
#include "banditgame/coalition_game.hpp"
#include "banditgame/runners.hpp"

namespace banditgame {

// Cumulative mean regret over t = 0..T (values[0] == 0) with per-point
// standard errors from the repetitions that produced it.
struct RegretCurve {
  std::vector<double> values;
  std::vector<double> stderrs;  // same length; zeros for analytic curves
  int num_reps = 1;

  int horizon() const { return static_cast<int>(values.size()) - 1; }
};

// Noiseless curve R(t) = f(t) sampled at integer t, for calibration.
RegretCurve analytic_curve(int horizon, const std::function<double(double)>& f);

struct DerivativePair {
  double first = 0.0;   // (R(t+h) - R(t)) / h
  double second = 0.0;  // (R'(t+g,h) - R'(t,h)) / g
};

// Discrete first and second derivatives of the curve at (t, g, h).
// Requires t >= 0, g,h >= 1 and t + g + h <= horizon.
DerivativePair discrete_derivatives(const RegretCurve& curve, int t, int g, int h);

// Propagated standard error of the discrete second derivative.
double second_derivative_stderr(const RegretCurve& curve, int t, int g, int h);

struct Window {
  int t = 0;
  int g = 1;
  int h = 1;
};

// Finite grid standing in for the all-(t,g,h) quantification: window
// sizes h = g in {T/32, T/16, T/8} and 16 log-spaced anchors t >= 8.
struct WindowGrid {
  std::vector<Window> windows;

  static WindowGrid default_grid(int horizon);
  static WindowGrid uniform(int horizon, int g, int h, int num_anchors);
};

struct CurveViolation {
  Window window;
  double measured = 0.0;   // the offending second derivative
  double threshold = 0.0;  // the bound it had to respect
};

struct AssumptionReport {
  bool pass = true;
  std::vector<CurveViolation> violations;
  long windows_checked = 0;
  double min_second = 0.0;
  double max_second = 0.0;
  double upsilon_floor = 0.0;  // min |R''| over the grid
};

// Strict concavity of the regret curve: flags every window whose
// second derivative is not strictly negative once sampling noise is
// accounted for, i.e. where R'' >= confidence_mult * stderr(R'').
// A noiseless linear curve (R'' = 0 exactly) therefore fails.
AssumptionReport check_strict_concavity(const RegretCurve& curve, const WindowGrid& grid,
                                        double confidence_mult = 3.0);

// Logarithmic limitation: flags windows where the second derivative
// drops significantly below -c * t^(-2 + eps).
AssumptionReport check_log_limitation(const RegretCurve& curve, double c, double eps,
                                      const WindowGrid& grid, double confidence_mult = 3.0);

// One flagged (agent, sub-coalition, coalition) pair of a
// more-the-merrier scan; carries both regret entries and their ratio,
// mirroring the violation-table layout.
struct MoreMerrierViolation {
  std::uint64_t coalition = 0;
  int agent = 0;
  double coalition_mean = 0.0;
  double coalition_err = 0.0;
  std::uint64_t sub_coalition = 0;
  double sub_mean = 0.0;
  double sub_err = 0.0;
  double ratio = 0.0;  // coalition_mean / sub_mean
};

struct MoreMerrierReport {
  bool pass = true;
  std::vector<MoreMerrierViolation> violations;
  long pairs_checked = 0;
};

// Scans every agent a and every nested pair S strictly inside Q with
// a in S; flags pairs where the bigger coalition's mean regret exceeds
// the smaller one's by more than slack_mult combined standard errors.
MoreMerrierReport check_more_merrier(const RegretTable& table, double slack_mult);

// Pipe-separated violation table:
// Coalition | Agent | Regret±err | Sub-coalition | Regret±err | ratio
std::string format_more_merrier_table(const MoreMerrierReport& report);

using CoalitionRunner = std::function<CoalitionRunResult(
    const ProblemInstance& instance, std::uint64_t coalition_mask, const RunKey& key)>;

struct SymmetryAgentRow {
  int agent = 0;
  int image = 0;  // permutation[agent]
  double original_mean = 0.0;
  double original_stderr = 0.0;
  double relabeled_mean = 0.0;
  double relabeled_stderr = 0.0;
};

struct SymmetryReport {
  bool pass = true;
  std::vector<SymmetryAgentRow> rows;
};

// Runs the grand coalition on the instance and on the instance with
// its action profile relabeled by `permutation`, `reps` times each
// with independent seeds, and compares each agent's mean regret with
// its image's.  Passes when every difference stays within tol_mult
// combined standard errors (exact equality required when both standard
// errors are zero).  relabeled_seed defaults to a value derived from
// seed; pass the same value to replay identical draws.
SymmetryReport check_symmetry_empirical(const CoalitionRunner& runner,
                                        const ProblemInstance& instance,
                                        const std::vector<int>& permutation, int reps,
                                        double tol_mult, std::uint64_t seed);
SymmetryReport check_symmetry_empirical(const CoalitionRunner& runner,
                                        const ProblemInstance& instance,
                                        const std::vector<int>& permutation, int reps,
                                        double tol_mult, std::uint64_t seed,
                                        std::uint64_t relabeled_seed);

// The instance with action profile composed with the permutation:
// agent permutation[a] in the result is offered a's sets.
ProblemInstance relabel_instance(const ProblemInstance& instance,
                                 const std::vector<int>& permutation);

}  // namespace banditgame
