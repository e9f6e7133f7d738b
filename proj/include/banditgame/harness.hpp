#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "banditgame/assumption_checks.hpp"
#include "banditgame/coalition_game.hpp"
#include "banditgame/instances.hpp"
#include "banditgame/io.hpp"
#include "banditgame/pooled_data.hpp"
#include "banditgame/runners.hpp"

namespace banditgame {

enum class CoalitionScope { kAll, kGrandOnly, kExplicit };

// Everything one experiment needs: the instance source, the algorithm
// and its hyperparameters, run sizes, seeding, scope, and output
// controls.  Mirrors the CLI flags and the JSON config keys 1:1.
struct ExperimentConfig {
  // Instance source: exactly one of the following kinds.
  std::string instance_kind = "cyclic";  // cyclic | asymmetric | movielens | file
  SyntheticSpec synthetic;
  MovieLensSpec movielens;
  std::string instance_file;

  // mul+ucb | mul+etc | mul+eps-greedy | metc | linucb-m | greedy
  std::string algorithm = "linucb-m";
  double ucb_width = 1.0;
  int etc_pulls_per_arm = 4;
  double eps_greedy_epsilon = 0.1;
  int metc_explore_len = 0;  // 0 = ceil(T^(2/3))
  double metc_ridge = 0.0;
  LinUcbParams linucb;
  GreedyOptions greedy;

  int horizon = 512;
  int repetitions = 5;
  std::uint64_t seed = 0;

  CoalitionScope scope = CoalitionScope::kAll;
  std::vector<std::uint64_t> explicit_masks;

  std::string out_dir;
  double tolerance_mult = 3.0;      // statistical tolerance multiplier
  double more_merrier_slack = 0.0;   // slack multiplier for the emitted violation table
  int parallelism = 0;              // 0 = hardware concurrency
  bool emit_curves = true;          // grand-coalition mean curves
  bool emit_trajectories = false;   // grand coalition, repetition 0
  bool full_scale = false;          // lifts the desk-scale cost gate
  int shapley_exact_limit = 20;
  long shapley_mc_perms = 20000;    // used when M exceeds the exact limit

  static ExperimentConfig from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;  // resolved values, for the manifest
};

// Coalition bitmasks covered by a scope, in ascending order.
std::vector<std::uint64_t> enumerate_coalitions(int num_agents, CoalitionScope scope,
                                                const std::vector<std::uint64_t>& explicit_masks);

struct ExperimentResult {
  ProblemInstance instance;
  std::vector<std::string> agent_labels;
  std::vector<std::uint64_t> masks;
  int repetitions = 0;

  std::vector<RawRegretRow> raw;  // sorted by (mask, agent, rep)
  RegretTable table;
  bool complete = false;  // all 2^M - 1 coalitions present

  std::optional<TUGame> mean_game;
  // Per-repetition games fed through the exact formula, averaged, with
  // the spread across repetitions as the error bar.
  std::optional<Allocation> shapley_per_rep;
  // The same estimator applied to the averaged game (identical mean by
  // linearity; emitted for cross-checking).
  std::optional<Allocation> shapley_of_mean_game;
  std::optional<Allocation> payout;
  std::optional<MoreMerrierReport> more_merrier;
  std::vector<RegretCurve> grand_curves;  // one per agent when emitted
  std::vector<Trajectory> grand_trajectories;

  ExperimentResult() : table(1) {}
};

// Runs the configured algorithm for every (coalition, repetition)
// pair, aggregates regrets, and builds the game-theoretic outputs.
// Tasks fan out over a worker pool; results are keyed by RunKey, so
// scheduling cannot change any number.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes the full artifact set into `dir` and returns the manifest
// JSON (also written as manifest.json).  Outputs are byte-identical
// across reruns of the same config and seed.
nlohmann::json emit_report(const ExperimentResult& result, const ExperimentConfig& config,
                           const std::string& dir);

// Dispatches one (coalition, repetition) run of the configured
// algorithm; exposed for tests and the acceptance suite.
CoalitionRunResult run_coalition(const ExperimentConfig& config, const ProblemInstance& instance,
                                 std::uint64_t mask, const RunKey& key);

}  // namespace banditgame
