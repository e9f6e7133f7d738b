#include "banditgame/assumption_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "banditgame/errors.hpp"

namespace banditgame {

namespace {

void check_window(const RegretCurve& curve, int t, int g, int h, const char* where) {
  if (t < 0 || g < 1 || h < 1)
    throw InvalidInputError(std::string(where) + ": need t >= 0 and g, h >= 1");
  if (t + g + h > curve.horizon())
    throw InvalidInputError(std::string(where) + ": window exceeds the curve horizon");
}

double value_stderr(const RegretCurve& curve, int t) {
  return curve.stderrs.empty() ? 0.0 : curve.stderrs[static_cast<std::size_t>(t)];
}

std::string format_pm(double mean, double err) {
  std::ostringstream out;
  out.precision(6);
  out << mean << " ± " << err;
  return out.str();
}

}  // namespace

RegretCurve analytic_curve(int horizon, const std::function<double(double)>& f) {
  if (horizon < 1) throw InvalidInputError("analytic_curve: horizon must be >= 1");
  RegretCurve curve;
  curve.values.resize(static_cast<std::size_t>(horizon) + 1);
  curve.stderrs.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
  curve.values[0] = 0.0;
  for (int t = 1; t <= horizon; ++t)
    curve.values[static_cast<std::size_t>(t)] = f(static_cast<double>(t));
  return curve;
}

DerivativePair discrete_derivatives(const RegretCurve& curve, int t, int g, int h) {
  check_window(curve, t, g, h, "discrete_derivatives");
  const auto r = [&](int i) { return curve.values[static_cast<std::size_t>(i)]; };
  DerivativePair d;
  d.first = (r(t + h) - r(t)) / static_cast<double>(h);
  const double first_shifted = (r(t + g + h) - r(t + g)) / static_cast<double>(h);
  d.second = (first_shifted - d.first) / static_cast<double>(g);
  return d;
}

double second_derivative_stderr(const RegretCurve& curve, int t, int g, int h) {
  check_window(curve, t, g, h, "second_derivative_stderr");
  // R'' is a signed combination of curve points; accumulate the
  // coefficient of each distinct point (t+h and t+g coincide at g==h).
  const double gh = static_cast<double>(g) * static_cast<double>(h);
  std::map<int, double> coef;
  coef[t + g + h] += 1.0 / gh;
  coef[t + g] -= 1.0 / gh;
  coef[t + h] -= 1.0 / gh;
  coef[t] += 1.0 / gh;
  double var = 0.0;
  for (const auto& [index, c] : coef) {
    const double se = value_stderr(curve, index);
    var += c * c * se * se;
  }
  return std::sqrt(var);
}

WindowGrid WindowGrid::default_grid(int horizon) {
  WindowGrid grid;
  std::set<int> sizes;
  for (int divisor : {32, 16, 8}) {
    const int s = horizon / divisor;
    if (s >= 1) sizes.insert(s);
  }
  if (sizes.empty()) sizes.insert(1);
  // 16 log-spaced anchors after burn-in t >= 8.
  constexpr int kAnchors = 16;
  constexpr int kBurnIn = 8;
  for (int size : sizes) {
    const int t_max = horizon - 2 * size;
    if (t_max < kBurnIn) continue;
    std::set<int> anchors;
    const double lo = std::log(static_cast<double>(kBurnIn));
    const double hi = std::log(static_cast<double>(t_max));
    for (int i = 0; i < kAnchors; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) / (kAnchors - 1);
      anchors.insert(static_cast<int>(std::lround(std::exp(x))));
    }
    for (int t : anchors) grid.windows.push_back(Window{t, size, size});
  }
  return grid;
}

WindowGrid WindowGrid::uniform(int horizon, int g, int h, int num_anchors) {
  if (g < 1 || h < 1 || num_anchors < 1)
    throw InvalidInputError("WindowGrid::uniform: invalid parameters");
  WindowGrid grid;
  const int t_max = horizon - g - h;
  if (t_max < 0) return grid;
  std::set<int> anchors;
  for (int i = 0; i < num_anchors; ++i) {
    anchors.insert(t_max * i / std::max(1, num_anchors - 1));
  }
  for (int t : anchors) grid.windows.push_back(Window{t, g, h});
  return grid;
}

namespace {

AssumptionReport scan_windows(
    const RegretCurve& curve, const WindowGrid& grid,
    const std::function<bool(const Window&, double r2, double se, double* threshold)>& flagged) {
  AssumptionReport report;
  report.min_second = std::numeric_limits<double>::infinity();
  report.max_second = -std::numeric_limits<double>::infinity();
  report.upsilon_floor = std::numeric_limits<double>::infinity();
  for (const Window& w : grid.windows) {
    if (w.t + w.g + w.h > curve.horizon()) continue;
    const double r2 = discrete_derivatives(curve, w.t, w.g, w.h).second;
    const double se = second_derivative_stderr(curve, w.t, w.g, w.h);
    ++report.windows_checked;
    report.min_second = std::min(report.min_second, r2);
    report.max_second = std::max(report.max_second, r2);
    report.upsilon_floor = std::min(report.upsilon_floor, std::abs(r2));
    double threshold = 0.0;
    if (flagged(w, r2, se, &threshold)) {
      report.violations.push_back(CurveViolation{w, r2, threshold});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace

AssumptionReport check_strict_concavity(const RegretCurve& curve, const WindowGrid& grid,
                                        double confidence_mult) {
  // Strict negativity is asserted against sampling noise: a window is
  // a violation when R'' - mult * se(R'') >= 0,
  // so an exactly flat stretch of a noiseless curve is flagged.
  return scan_windows(curve, grid, [&](const Window&, double r2, double se, double* threshold) {
    *threshold = confidence_mult * se;
    return r2 - confidence_mult * se >= 0.0;
  });
}

AssumptionReport check_log_limitation(const RegretCurve& curve, double c, double eps,
                                      const WindowGrid& grid, double confidence_mult) {
  if (c <= 0.0 || eps <= 0.0)
    throw InvalidInputError("check_log_limitation: c and eps must be positive");
  return scan_windows(curve, grid, [&](const Window& w, double r2, double se, double* threshold) {
    const double bound = -c * std::pow(static_cast<double>(std::max(w.t, 1)), -2.0 + eps);
    *threshold = bound;
    return r2 + confidence_mult * se < bound;
  });
}

MoreMerrierReport check_more_merrier(const RegretTable& table, double slack_mult) {
  if (slack_mult < 0.0)
    throw InvalidInputError("check_more_merrier: slack multiplier must be non-negative");
  if (!table.complete())
    throw IncompleteTableError("check_more_merrier: regret table must be complete");
  MoreMerrierReport report;
  const std::uint64_t grand = table.grand_mask();
  for (int agent = 0; agent < table.num_agents(); ++agent) {
    const std::uint64_t bit = 1ULL << agent;
    for (std::uint64_t q = 1; q <= grand; ++q) {
      if (!(q & bit)) continue;
      const RegretEntry& at_q = table.at(q, agent);
      // All S strictly inside Q containing the agent.
      const std::uint64_t rest = q & ~bit;
      std::uint64_t sub = rest;
      while (true) {
        const std::uint64_t s = sub | bit;
        if (s != q) {
          const RegretEntry& at_s = table.at(s, agent);
          ++report.pairs_checked;
          const double combined =
              std::sqrt(at_q.stderr_ * at_q.stderr_ + at_s.stderr_ * at_s.stderr_);
          if (at_q.mean > at_s.mean + slack_mult * combined) {
            MoreMerrierViolation v;
            v.coalition = q;
            v.agent = agent;
            v.coalition_mean = at_q.mean;
            v.coalition_err = at_q.stderr_;
            v.sub_coalition = s;
            v.sub_mean = at_s.mean;
            v.sub_err = at_s.stderr_;
            v.ratio = at_s.mean != 0.0 ? at_q.mean / at_s.mean
                                       : std::numeric_limits<double>::infinity();
            report.violations.push_back(v);
          }
        }
        if (sub == 0) break;
        sub = (sub - 1) & rest;
      }
    }
  }
  report.pass = report.violations.empty();
  return report;
}

std::string format_more_merrier_table(const MoreMerrierReport& report) {
  std::ostringstream out;
  out << "Coalition | Agent | Regret±err | Sub-coalition | Regret±err | ratio\n";
  for (const MoreMerrierViolation& v : report.violations) {
    out << coalition_to_string(v.coalition) << " | " << v.agent << " | "
        << format_pm(v.coalition_mean, v.coalition_err) << " | "
        << coalition_to_string(v.sub_coalition) << " | " << format_pm(v.sub_mean, v.sub_err)
        << " | ";
    out.precision(6);
    out << v.ratio << "\n";
  }
  return out.str();
}

ProblemInstance relabel_instance(const ProblemInstance& instance,
                                 const std::vector<int>& permutation) {
  const int m = instance.num_agents();
  if (static_cast<int>(permutation.size()) != m)
    throw InvalidInputError("relabel_instance: permutation length must equal num_agents");
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int image : permutation) {
    if (image < 0 || image >= m || seen[static_cast<std::size_t>(image)])
      throw InvalidInputError("relabel_instance: not a bijection on the agents");
    seen[static_cast<std::size_t>(image)] = true;
  }
  switch (instance.layout()) {
    case ActionLayout::kShared:
      return instance;  // all agents already identical
    case ActionLayout::kPerAgent: {
      std::vector<ActionSet> sets(static_cast<std::size_t>(m));
      for (int a = 0; a < m; ++a)
        sets[static_cast<std::size_t>(permutation[static_cast<std::size_t>(a)])] =
            instance.action_set(a, 1);
      return ProblemInstance::per_agent(instance.theta_star(), std::move(sets),
                                        instance.horizon(), instance.noise_std());
    }
    case ActionLayout::kPerAgentPerTime: {
      std::vector<std::vector<ActionSet>> sets(static_cast<std::size_t>(m));
      for (int a = 0; a < m; ++a) {
        auto& row = sets[static_cast<std::size_t>(permutation[static_cast<std::size_t>(a)])];
        row.reserve(static_cast<std::size_t>(instance.horizon()));
        for (int t = 1; t <= instance.horizon(); ++t) row.push_back(instance.action_set(a, t));
      }
      return ProblemInstance::per_agent_per_time(instance.theta_star(), std::move(sets),
                                                 instance.noise_std());
    }
  }
  throw InvalidInputError("relabel_instance: unknown layout");
}

SymmetryReport check_symmetry_empirical(const CoalitionRunner& runner,
                                        const ProblemInstance& instance,
                                        const std::vector<int>& permutation, int reps,
                                        double tol_mult, std::uint64_t seed) {
  return check_symmetry_empirical(runner, instance, permutation, reps, tol_mult, seed,
                                  mix64(seed ^ 0x72656c6162656cULL));
}

SymmetryReport check_symmetry_empirical(const CoalitionRunner& runner,
                                        const ProblemInstance& instance,
                                        const std::vector<int>& permutation, int reps,
                                        double tol_mult, std::uint64_t seed,
                                        std::uint64_t relabeled_seed) {
  if (reps < 1) throw InvalidInputError("check_symmetry_empirical: reps must be >= 1");
  const int m = instance.num_agents();
  const ProblemInstance relabeled = relabel_instance(instance, permutation);
  const std::uint64_t grand = (1ULL << m) - 1;

  auto collect = [&](const ProblemInstance& inst, std::uint64_t run_seed) {
    std::vector<double> sum(static_cast<std::size_t>(m), 0.0);
    std::vector<double> sumsq(static_cast<std::size_t>(m), 0.0);
    for (int rep = 0; rep < reps; ++rep) {
      const CoalitionRunResult result =
          runner(inst, grand, RunKey{run_seed, grand, static_cast<std::uint32_t>(rep)});
      for (int a = 0; a < m; ++a) {
        const double regret = result.agent_regret(a);
        sum[static_cast<std::size_t>(a)] += regret;
        sumsq[static_cast<std::size_t>(a)] += regret * regret;
      }
    }
    return std::make_pair(sum, sumsq);
  };
  const auto [orig_sum, orig_sumsq] = collect(instance, seed);
  const auto [perm_sum, perm_sumsq] = collect(relabeled, relabeled_seed);

  auto mean_stderr = [&](const std::vector<double>& sum, const std::vector<double>& sumsq,
                         int agent) {
    const auto idx = static_cast<std::size_t>(agent);
    const double mean = sum[idx] / reps;
    double se = 0.0;
    if (reps > 1) {
      const double var = std::max(0.0, (sumsq[idx] - reps * mean * mean) / (reps - 1));
      se = std::sqrt(var / reps);
    }
    return std::make_pair(mean, se);
  };

  SymmetryReport report;
  for (int a = 0; a < m; ++a) {
    SymmetryAgentRow row;
    row.agent = a;
    row.image = permutation[static_cast<std::size_t>(a)];
    std::tie(row.original_mean, row.original_stderr) = mean_stderr(orig_sum, orig_sumsq, a);
    std::tie(row.relabeled_mean, row.relabeled_stderr) =
        mean_stderr(perm_sum, perm_sumsq, row.image);
    const double combined = std::sqrt(row.original_stderr * row.original_stderr +
                                      row.relabeled_stderr * row.relabeled_stderr);
    const double diff = std::abs(row.original_mean - row.relabeled_mean);
    if (diff > tol_mult * combined) report.pass = false;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace banditgame
