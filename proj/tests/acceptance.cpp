// Acceptance suite: end-to-end checks of the library's headline
// guarantees, one deterministic pass/fail line per criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "banditgame/assumption_checks.hpp"
#include "banditgame/coalition_game.hpp"
#include "banditgame/harness.hpp"
#include "banditgame/instances.hpp"
#include "banditgame/io.hpp"
#include "banditgame/policies.hpp"
#include "banditgame/runners.hpp"

using namespace banditgame;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

struct MeanStderr {
  double mean = 0.0;
  double se = 0.0;
};

MeanStderr summarize(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  MeanStderr out;
  for (double v : values) out.mean += v;
  out.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(ss / (n - 1) / n);
  }
  return out;
}

TUGame make_game(int n, const std::function<double(std::uint64_t)>& v) {
  TUGame game;
  game.num_agents = n;
  game.values.assign(1ULL << n, 0.0);
  for (std::uint64_t mask = 1; mask < game.values.size(); ++mask) game.values[mask] = v(mask);
  return game;
}

ProblemInstance shared_arms(const std::vector<double>& means, int num_agents, int horizon,
                            double sigma) {
  const int k = static_cast<int>(means.size());
  Eigen::VectorXd theta(k);
  for (int i = 0; i < k; ++i) theta[i] = means[static_cast<std::size_t>(i)];
  ActionSet set;
  set.actions = Eigen::MatrixXd::Identity(k, k);
  return ProblemInstance::shared(theta, set, num_agents, horizon, sigma);
}

// ---------------------------------------------------------------- 1 --

void criterion1_game_theory_oracles() {
  const TUGame glove = make_game(3, [](std::uint64_t mask) {
    return (mask & 1ULL) && (mask & 0b110ULL) ? 1.0 : 0.0;
  });

  // Independent oracle: average marginals over all 3! join orders,
  // computed right here against the raw value function.
  std::vector<int> order = {0, 1, 2};
  std::vector<double> oracle(3, 0.0);
  int perms = 0;
  do {
    std::uint64_t mask = 0;
    for (int agent : order) {
      oracle[static_cast<std::size_t>(agent)] +=
          glove.values[mask | (1ULL << agent)] - glove.values[mask];
      mask |= 1ULL << agent;
    }
    ++perms;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& v : oracle) v /= perms;

  bool pass = std::abs(oracle[0] - 2.0 / 3.0) <= 1e-12 &&
              std::abs(oracle[1] - 1.0 / 6.0) <= 1e-12;
  const Allocation phi = shapley_exact(glove);
  for (int a = 0; a < 3; ++a)
    pass = pass && std::abs(phi.payouts[static_cast<std::size_t>(a)] -
                            oracle[static_cast<std::size_t>(a)]) <= 1e-9;

  pass = pass && !is_in_core(glove, phi, 1e-9).pass();
  const auto [glove_core, glove_witness] = core_nonempty(glove, 1e-9);
  pass = pass && glove_core && glove_witness.has_value() &&
         is_in_core(glove, *glove_witness, 1e-9).pass();

  const TUGame squared = make_game(3, [](std::uint64_t mask) {
    const double s = static_cast<double>(__builtin_popcountll(mask));
    return s * s;
  });
  pass = pass && is_convex(squared, 0.0).pass();
  const Allocation squared_phi = shapley_exact(squared);
  for (int a = 0; a < 3; ++a)
    pass = pass && std::abs(squared_phi.payouts[static_cast<std::size_t>(a)] - 3.0) <= 1e-9;
  pass = pass && is_in_core(squared, squared_phi, 1e-9).pass();

  const TUGame majority = make_game(3, [](std::uint64_t mask) {
    return __builtin_popcountll(mask) >= 2 ? 1.0 : 0.0;
  });
  pass = pass && !core_nonempty(majority, 1e-9).first;

  report(1, "game-theory oracle suite", pass);
}

// ---------------------------------------------------------------- 2 --

void criterion2_fuzz_properties() {
  RngStream rng(RngStream::Key{20240801, 0, 0, 0, StreamPurpose::kFuzz});
  bool pass = true;
  std::string detail;
  int convex_games = 0;
  for (int trial = 0; trial < 1000 && pass; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));  // M in 2..6
    const bool convex_trial = trial % 2 == 1;
    TUGame game;
    if (convex_trial) {
      // Non-negative combination of unanimity games: supermodular.
      game.num_agents = n;
      game.values.assign(1ULL << n, 0.0);
      std::vector<double> weights(game.values.size(), 0.0);
      for (std::uint64_t r = 1; r < weights.size(); ++r) weights[r] = rng.uniform01();
      for (std::uint64_t mask = 1; mask < game.values.size(); ++mask) {
        double value = 0.0;
        for (std::uint64_t r = 1; r < weights.size(); ++r) {
          if ((r & mask) == r) value += weights[r];
        }
        game.values[mask] = value;
      }
    } else {
      game = make_game(n, [&](std::uint64_t) { return 4.0 * rng.uniform01() - 2.0; });
    }

    const Allocation phi = shapley_exact(game);
    const double total = std::accumulate(phi.payouts.begin(), phi.payouts.end(), 0.0);
    const double scale = std::max(1.0, std::abs(game.value(game.grand_mask())));
    if (std::abs(total - game.value(game.grand_mask())) > 1e-9 * scale) {
      pass = false;
      detail = "efficiency failed at trial " + std::to_string(trial);
      break;
    }

    // Linearity against an independently drawn partner game.
    const TUGame partner = make_game(n, [&](std::uint64_t) { return 4.0 * rng.uniform01() - 2.0; });
    TUGame sum = game;
    for (std::size_t mask = 0; mask < sum.values.size(); ++mask)
      sum.values[mask] += partner.values[mask];
    const Allocation phi_partner = shapley_exact(partner);
    const Allocation phi_sum = shapley_exact(sum);
    for (int a = 0; a < n; ++a) {
      if (std::abs(phi_sum.payouts[static_cast<std::size_t>(a)] -
                   phi.payouts[static_cast<std::size_t>(a)] -
                   phi_partner.payouts[static_cast<std::size_t>(a)]) > 1e-9) {
        pass = false;
        detail = "linearity failed at trial " + std::to_string(trial);
      }
    }

    if (is_convex(game, 0.0).pass()) {
      ++convex_games;
      if (!is_in_core(game, phi, 1e-9 * scale).pass()) {
        pass = false;
        detail = "convex game left its shapley outside the core at trial " +
                 std::to_string(trial);
      }
    }

    // Exhaustive-permutation hook equals the exact formula.
    const Allocation exhaustive = shapley_all_permutations(game);
    for (int a = 0; a < n; ++a) {
      if (std::abs(exhaustive.payouts[static_cast<std::size_t>(a)] -
                   phi.payouts[static_cast<std::size_t>(a)]) > 1e-12) {
        pass = false;
        detail = "exhaustive hook diverged at trial " + std::to_string(trial);
      }
    }
  }
  pass = pass && convex_games >= 300;
  report(2, "fuzz: efficiency, linearity, convexity => core, exhaustive hook", pass,
         detail.empty() ? std::to_string(convex_games) + " convex games exercised" : detail);
}

// ---------------------------------------------------------------- 3 --

void criterion3_mul_structural() {
  bool pass = true;
  std::string detail;

  const UcbPolicy ucb(1.0);
  const EpsGreedyPolicy eps(0.15);
  for (const auto& [num_arms, horizon] : std::vector<std::pair<int, int>>{{3, 10}, {5, 64}, {2, 200}}) {
    std::vector<double> means;
    for (int i = 0; i < num_arms; ++i) means.push_back(0.9 - 0.2 * i);
    const ProblemInstance inst = shared_arms(means, 4, horizon, 1.0);
    for (std::uint64_t mask : {0b0001ULL, 0b0011ULL, 0b1011ULL, 0b1111ULL}) {
      for (const SinglePolicy* sin : {static_cast<const SinglePolicy*>(&ucb),
                                      static_cast<const SinglePolicy*>(&eps)}) {
        const CoalitionRunResult run = run_mul(*sin, mask, inst, RunKey{333, mask, 0});
        const long m = __builtin_popcountll(mask);
        const long tau = run.mul->tau_bar;
        if (tau < m * horizon - m * num_arms || tau > m * horizon) {
          pass = false;
          detail = "virtual clock out of bounds";
        }
        if (run.mul->buffer_residue != m * horizon - tau) {
          pass = false;
          detail = "buffer accounting broken";
        }
      }
    }
  }

  // Singleton runs reproduce run_single bit for bit.
  const ProblemInstance inst = shared_arms({0.7, 0.5, 0.2}, 3, 500, 1.0);
  for (int agent : {0, 1, 2}) {
    const std::uint64_t mask = 1ULL << agent;
    const RunKey key{999, mask, 7};
    const CoalitionRunResult mul = run_mul(ucb, mask, inst, key);
    const Trajectory single = run_single(ucb, inst, agent, 500, key);
    for (std::size_t i = 0; i < single.entries.size(); ++i) {
      if (mul.trajectories[0].entries[i].action_index != single.entries[i].action_index ||
          mul.trajectories[0].entries[i].reward != single.entries[i].reward) {
        pass = false;
        detail = "singleton reduction not bit-identical";
      }
    }
  }
  report(3, "shared-buffer structural bounds and singleton reduction", pass, detail);
}

// ---------------------------------------------------------------- 4 --

void criterion4_coalition_vs_single() {
  // Fixed 3-arm instance, gaps (0, 0.2, 0.5), sigma = 1, 50 reps:
  // the coalition total at T stays within mK + 3 pooled-stderr of a
  // single agent run for m*T steps.
  const int horizon = 2000;
  const int reps = 50;
  const ProblemInstance inst = shared_arms({0.7, 0.5, 0.2}, 4, horizon, 1.0);
  const UcbPolicy ucb(1.0);
  bool pass = true;
  std::string detail;
  for (const int m : {2, 4}) {
    const std::uint64_t mask = (1ULL << m) - 1;
    std::vector<double> coalition_totals;
    std::vector<double> single_totals;
    for (int rep = 0; rep < reps; ++rep) {
      const CoalitionRunResult run =
          run_mul(ucb, mask, inst, RunKey{4444, mask, static_cast<std::uint32_t>(rep)});
      coalition_totals.push_back(run.total_regret());
      const Trajectory single = run_single(
          ucb, inst, 0, m * horizon, RunKey{5555, 1ULL << 20, static_cast<std::uint32_t>(rep)});
      single_totals.push_back(single.regret_curve.back());
    }
    const MeanStderr coalition = summarize(coalition_totals);
    const MeanStderr single = summarize(single_totals);
    const double pooled = std::sqrt(coalition.se * coalition.se + single.se * single.se);
    const double bound = m * 3 + 3.0 * pooled;
    const double gap = std::abs(coalition.mean - single.mean);
    detail += "m=" + std::to_string(m) + ": |" + format_double(coalition.mean) + " - " +
              format_double(single.mean) + "| = " + format_double(gap) + " vs " +
              format_double(bound) + "; ";
    if (gap > bound) pass = false;
  }
  report(4, "coalition regret tracks the single agent at m*T within mK", pass, detail);
}

// ---------------------------------------------------------------- 5 --

void criterion5_empirical_supermodularity() {
  // M = 4 shared 5-arm instance, T = 4096, 20 reps, shared-buffer
  // runs: the induced empirical game is supermodular within noise.
  const int horizon = 4096;
  const int reps = 20;
  const int num_agents = 4;
  const ProblemInstance inst =
      shared_arms({0.9, 0.75, 0.6, 0.45, 0.3}, num_agents, horizon, 1.0);
  const UcbPolicy ucb(1.0);
  const std::uint64_t grand = (1ULL << num_agents) - 1;

  // Per-repetition coalition values v_r(C) = -(total coalition regret).
  std::map<std::uint64_t, std::vector<double>> values;
  for (std::uint64_t mask = 1; mask <= grand; ++mask) {
    std::vector<double>& slot = values[mask];
    for (int rep = 0; rep < reps; ++rep) {
      const CoalitionRunResult run =
          run_mul(ucb, mask, inst, RunKey{20240805, mask, static_cast<std::uint32_t>(rep)});
      slot.push_back(-run.total_regret());
    }
  }
  std::map<std::uint64_t, MeanStderr> stats;
  for (const auto& [mask, slot] : values) stats[mask] = summarize(slot);

  long checked = 0;
  long violated = 0;
  for (int agent = 0; agent < num_agents; ++agent) {
    const std::uint64_t bit = 1ULL << agent;
    const std::uint64_t rest = grand & ~bit;
    std::uint64_t q = rest;
    while (true) {
      std::uint64_t s = q;
      while (true) {
        if (s != q) {
          auto value = [&](std::uint64_t mask) { return mask == 0 ? 0.0 : stats[mask].mean; };
          auto variance = [&](std::uint64_t mask) {
            return mask == 0 ? 0.0 : stats[mask].se * stats[mask].se;
          };
          const double delta = (value(q | bit) - value(q)) - (value(s | bit) - value(s));
          const double se = std::sqrt(variance(q | bit) + variance(q) + variance(s | bit) +
                                      variance(s));
          ++checked;
          if (delta < -3.0 * se) ++violated;
        }
        if (s == 0) break;
        s = (s - 1) & q;
      }
      if (q == 0) break;
      q = (q - 1) & rest;
    }
  }
  const double fraction = checked > 0 ? static_cast<double>(violated) / checked : 1.0;
  report(5, "empirical supermodularity of the induced game", violated == 0,
         "violation fraction " + format_double(fraction) + " (" + std::to_string(violated) +
             " of " + std::to_string(checked) + " inequalities)");
}

// --------------------------------------------------------- shared 6/7 --

struct HeterogeneousRun {
  ProblemInstance instance;
  RegretTable table{3};
  std::map<std::uint64_t, std::vector<double>> per_rep_totals;  // coalition value samples
  std::map<std::pair<std::uint64_t, int>, std::vector<double>> per_rep_agent;
};

// Three heterogeneous agents; agents 0 and 1 share one action set,
// agent 2 owns a different one, so the equal-treatment scan has one
// genuine pair to bite on.
HeterogeneousRun run_heterogeneous_metc() {
  HeterogeneousRun out;
  const int d = 6;
  const int horizon = 1024;
  const int reps = 50;
  RngStream gen(RngStream::Key{606060, 0, 0, 0, StreamPurpose::kFuzz});
  auto random_set = [&](int count) {
    ActionSet set;
    set.actions.resize(count, d);
    for (int i = 0; i < count; ++i) {
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j) x[j] = gen.gaussian();
      set.actions.row(i) = x.normalized().transpose();
    }
    return set;
  };
  const ActionSet shared_pair = random_set(8);
  const ActionSet loner = random_set(8);
  Eigen::VectorXd theta(d);
  for (int j = 0; j < d; ++j) theta[j] = gen.gaussian();
  theta.normalize();
  out.instance =
      ProblemInstance::per_agent(theta, {shared_pair, shared_pair, loner}, horizon, 1.0);

  const int explore = static_cast<int>(std::ceil(std::pow(horizon, 2.0 / 3.0)));
  for (std::uint64_t mask = 1; mask <= 7; ++mask) {
    const std::vector<int> members = mask_members(mask);
    std::map<int, std::vector<double>> agent_regrets;
    for (int rep = 0; rep < reps; ++rep) {
      const CoalitionRunResult run = run_metc(mask, out.instance, explore, 1e-8,
                                              RunKey{707070, mask, static_cast<std::uint32_t>(rep)});
      double total = 0.0;
      for (std::size_t i = 0; i < members.size(); ++i) {
        const double regret = run.trajectories[i].regret_curve.back();
        agent_regrets[members[i]].push_back(regret);
        out.per_rep_agent[{mask, members[i]}].push_back(regret);
        total += regret;
      }
      out.per_rep_totals[mask].push_back(-total);
    }
    for (int a : members) {
      const MeanStderr ms = summarize(agent_regrets[a]);
      out.table.set(mask, a, RegretEntry{ms.mean, ms.se, reps});
    }
  }
  return out;
}

void criterion6_metc_more_merrier(const HeterogeneousRun& run) {
  const MoreMerrierReport report6 = check_more_merrier(run.table, 3.0);
  report(6, "explore-then-commit satisfies more-the-merrier at 3 stderr", report6.pass,
         std::to_string(report6.violations.size()) + " of " +
             std::to_string(report6.pairs_checked) + " pairs flagged");
}

void criterion7_payout_properties(const HeterogeneousRun& run) {
  bool pass = true;
  std::string detail;
  const TUGame game = value_from_regrets(run.table);
  const Allocation payout = grand_payout(run.table);

  // Efficiency is a summation identity, independent of noise.
  const double total = std::accumulate(payout.payouts.begin(), payout.payouts.end(), 0.0);
  if (std::abs(total - game.value(game.grand_mask())) > 1e-9) {
    pass = false;
    detail += "efficiency broken; ";
  }

  // Statistical tolerance wide enough to recognize agents 0 and 1 as
  // equals: 3 combined standard errors over the table.
  double max_se = 0.0;
  for (const auto& [mask, entries] : run.table.rows()) {
    for (int a = 0; a < 3; ++a) {
      if (run.table.has(mask, a)) max_se = std::max(max_se, run.table.at(mask, a).stderr_);
    }
  }
  const double tol = 3.0 * std::sqrt(2.0) * max_se;
  const AxiomReport axioms = axiom_report(game, payout, tol);
  if (!axioms.dummy.pass()) {
    pass = false;
    detail += "dummy axiom violated; ";
  }
  if (!axioms.symmetry.pass()) {
    pass = false;
    detail += "equal-treatment violated; ";
  }
  if (axioms.symmetry.checked < 1) {
    pass = false;
    detail += "equal-treatment scan found no equal pair; ";
  }

  // Core membership at three propagated standard errors per
  // constraint: payout terms come from the grand coalition, the value
  // side from the per-repetition coalition totals.
  const std::uint64_t grand = game.grand_mask();
  double tol_core = 0.0;
  for (std::uint64_t mask = 1; mask <= grand; ++mask) {
    double var = summarize(run.per_rep_totals.at(mask)).se;
    var = var * var;
    for (int a = 0; a < 3; ++a) {
      if (mask & (1ULL << a)) {
        const double se = run.table.at(grand, a).stderr_;
        var += se * se;
      }
    }
    tol_core = std::max(tol_core, 3.0 * std::sqrt(var));
  }
  const ViolationReport core = is_in_core(game, payout, tol_core);
  if (!core.pass()) {
    pass = false;
    detail += "payout left the core (tol " + format_double(tol_core) + "); ";
  }
  report(7, "grand-coalition payout: efficiency, axioms, core membership", pass,
         detail.empty() ? std::to_string(axioms.symmetry.checked) + " equal pair(s) checked"
                        : detail);
}

// ---------------------------------------------------------------- 8 --

void criterion8_symmetric_fairness() {
  // Rotation-symmetric instance: every payout must line up with its
  // Shapley value, and all payouts with one another, within noise.
  SyntheticSpec spec;
  spec.horizon = 1024;
  const ProblemInstance inst = make_cyclic_synthetic(spec);
  const int reps = 10;
  const std::uint64_t grand = 0b11111;
  LinUcbParams params;

  std::map<std::pair<std::uint64_t, int>, std::vector<double>> regrets;
  for (std::uint64_t mask = 1; mask <= grand; ++mask) {
    const std::vector<int> members = mask_members(mask);
    for (int rep = 0; rep < reps; ++rep) {
      const CoalitionRunResult run =
          run_linucb_m(mask, inst, params, RunKey{808080, mask, static_cast<std::uint32_t>(rep)});
      for (std::size_t i = 0; i < members.size(); ++i)
        regrets[{mask, members[i]}].push_back(run.trajectories[i].regret_curve.back());
    }
  }

  // Per-repetition games, exact Shapley per repetition.
  std::vector<std::vector<double>> shapley_reps(reps, std::vector<double>(5, 0.0));
  for (int rep = 0; rep < reps; ++rep) {
    TUGame game;
    game.num_agents = 5;
    game.values.assign(1ULL << 5, 0.0);
    for (std::uint64_t mask = 1; mask <= grand; ++mask) {
      double sum = 0.0;
      for (int a = 0; a < 5; ++a) {
        if (mask & (1ULL << a))
          sum += regrets.at({mask, a})[static_cast<std::size_t>(rep)];
      }
      game.values[mask] = -sum;
    }
    shapley_reps[static_cast<std::size_t>(rep)] = shapley_exact(game).payouts;
  }

  bool pass = true;
  std::string detail;
  std::vector<MeanStderr> phi(5);
  std::vector<MeanStderr> payout(5);
  for (int a = 0; a < 5; ++a) {
    std::vector<double> phis;
    for (int rep = 0; rep < reps; ++rep)
      phis.push_back(shapley_reps[static_cast<std::size_t>(rep)][static_cast<std::size_t>(a)]);
    phi[static_cast<std::size_t>(a)] = summarize(phis);
    std::vector<double> negated;
    for (double r : regrets.at({grand, a})) negated.push_back(-r);
    payout[static_cast<std::size_t>(a)] = summarize(negated);
  }
  double worst = 0.0;
  for (int a = 0; a < 5; ++a) {
    const double diff =
        std::abs(payout[static_cast<std::size_t>(a)].mean - phi[static_cast<std::size_t>(a)].mean);
    const double combined = std::sqrt(
        payout[static_cast<std::size_t>(a)].se * payout[static_cast<std::size_t>(a)].se +
        phi[static_cast<std::size_t>(a)].se * phi[static_cast<std::size_t>(a)].se);
    worst = std::max(worst, combined > 0 ? diff / combined : 0.0);
    if (diff > 3.0 * combined) pass = false;
  }
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      const double diff =
          std::abs(payout[static_cast<std::size_t>(a)].mean - payout[static_cast<std::size_t>(b)].mean);
      const double combined = std::sqrt(
          payout[static_cast<std::size_t>(a)].se * payout[static_cast<std::size_t>(a)].se +
          payout[static_cast<std::size_t>(b)].se * payout[static_cast<std::size_t>(b)].se);
      if (diff > 3.0 * combined) pass = false;
    }
  }
  report(8, "symmetric instance: payouts track shapley and one another", pass,
         "worst |payout - shapley| at " + format_double(worst) + " combined stderr");
}

// ---------------------------------------------------------------- 9 --

// Deterministic fabricated corpus in the MovieLens-100k formats: 150
// users, 250 movies, pseudo-random but seeded ratings.
void write_fake_movielens(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  RngStream rng(RngStream::Key{909090, 0, 0, 0, StreamPurpose::kFuzz});
  std::ofstream ratings(dir / "u.data");
  const int num_users = 150;
  const int num_movies = 250;
  for (int u = 1; u <= num_users; ++u) {
    std::set<int> seen;
    for (int k = 0; k < 60; ++k) {
      const int movie = 1 + static_cast<int>(rng.below(num_movies));
      if (!seen.insert(movie).second) continue;
      const int rating = 1 + static_cast<int>(rng.below(5));
      ratings << u << "\t" << movie << "\t" << rating << "\t881250949\n";
    }
  }
  ratings.close();
  std::ofstream users(dir / "u.user");
  const char* occupations[6] = {"student", "engineer", "doctor", "artist", "writer", "educator"};
  for (int u = 1; u <= num_users; ++u) {
    users << u << "|" << (15 + (u * 13) % 50) << "|" << (u % 5 < 2 ? 'F' : 'M') << "|"
          << occupations[u % 6] << "|" << (10000 + u * 613) % 100000 << "\n";
  }
}

void criterion9_movielens_smoke() {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "banditgame_acceptance_ml";
  fs::remove_all(base);
  write_fake_movielens(base / "data");

  bool pass = true;
  std::string detail;
  for (const std::string algorithm : {"linucb-m", "greedy"}) {
    ExperimentConfig config;
    config.instance_kind = "movielens";
    config.movielens.ratings_path = (base / "data" / "u.data").string();
    config.movielens.users_path = (base / "data" / "u.user").string();
    config.movielens.attribute = MovieLensAttribute::kGender;
    config.movielens.embedding_dim = 20;
    config.movielens.max_movies = 200;
    config.algorithm = algorithm;
    config.horizon = 256;
    config.repetitions = 2;
    config.seed = 20250809;
    config.parallelism = 2;

    const fs::path out_a = base / (algorithm + "_a");
    const fs::path out_b = base / (algorithm + "_b");
    const ExperimentResult result = run_experiment(config);
    emit_report(result, config, out_a.string());
    const ExperimentResult rerun = run_experiment(config);
    emit_report(rerun, config, out_b.string());

    // Full artifact set.
    for (const char* name : {"regrets_raw.csv", "regrets_agg.csv", "game.csv", "scatter.csv",
                             "identity_line.csv", "more_merrier_violations.txt", "manifest.json"}) {
      if (!fs::exists(out_a / name)) {
        pass = false;
        detail += algorithm + " missing " + name + "; ";
      }
    }
    // Scatter rows: one per agent (M = 2) plus the header.
    const std::string scatter = read_text_file((out_a / "scatter.csv").string());
    long rows = -1;
    for (char c : scatter) rows += c == '\n';
    if (rows != 2) {
      pass = false;
      detail += algorithm + " scatter rows " + std::to_string(rows) + "; ";
    }
    const std::string violations = read_text_file((out_a / "more_merrier_violations.txt").string());
    if (violations.rfind("Coalition | Agent | Regret±err | Sub-coalition | Regret±err | ratio\n",
                         0) != 0) {
      pass = false;
      detail += algorithm + " violation table header mismatch; ";
    }
    // Bit-identical rerun.
    for (const auto& entry : fs::directory_iterator(out_a)) {
      const std::string name = entry.path().filename().string();
      if (read_text_file(entry.path().string()) != read_text_file((out_b / name).string())) {
        pass = false;
        detail += algorithm + " rerun diverged in " + name + "; ";
      }
    }
  }
  fs::remove_all(base);
  report(9, "movielens pipeline: artifacts, schema, determinism", pass, detail);
}

// --------------------------------------------------------------- 10 --

void criterion10_checker_calibration() {
  const int horizon = 512;
  const auto grid = WindowGrid::default_grid(horizon);
  bool pass = true;
  std::string detail;

  const RegretCurve sqrt_curve =
      analytic_curve(horizon, [](double t) { return 10.0 * std::sqrt(t); });
  if (!check_strict_concavity(sqrt_curve, grid).pass) {
    pass = false;
    detail += "sqrt curve flagged; ";
  }
  const RegretCurve log_curve = analytic_curve(horizon, [](double t) { return std::log(t); });
  if (!check_strict_concavity(log_curve, grid).pass) {
    pass = false;
    detail += "log curve flagged; ";
  }
  const RegretCurve linear = analytic_curve(horizon, [](double t) { return 0.25 * t; });
  if (check_strict_concavity(linear, grid).pass) {
    pass = false;
    detail += "linear curve passed; ";
  }
  const RegretCurve quadratic =
      analytic_curve(horizon, [](double t) { return t * t / 128.0; });
  if (check_strict_concavity(quadratic, grid).pass) {
    pass = false;
    detail += "quadratic curve passed; ";
  }
  if (!check_log_limitation(log_curve, 1.0, 0.1, grid).pass) {
    pass = false;
    detail += "log curve failed the log-limitation bound; ";
  }
  report(10, "regret-curve checker calibration on analytic curves", pass, detail);
}

}  // namespace

int main() {
  criterion1_game_theory_oracles();
  criterion2_fuzz_properties();
  criterion3_mul_structural();
  criterion4_coalition_vs_single();
  criterion5_empirical_supermodularity();
  const HeterogeneousRun hetero = run_heterogeneous_metc();
  criterion6_metc_more_merrier(hetero);
  criterion7_payout_properties(hetero);
  criterion8_symmetric_fairness();
  criterion9_movielens_smoke();
  criterion10_checker_calibration();
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
