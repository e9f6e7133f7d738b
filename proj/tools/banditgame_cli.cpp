// Command-line front end: simulate experiments, analyze regret tables,
// check algorithmic assumptions, and build problem instances.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "banditgame/assumption_checks.hpp"
#include "banditgame/coalition_game.hpp"
#include "banditgame/errors.hpp"
#include "banditgame/harness.hpp"
#include "banditgame/instances.hpp"
#include "banditgame/io.hpp"

namespace {

using banditgame::ExperimentConfig;
using nlohmann::json;

void print_allocation(const std::string& name, const banditgame::Allocation& alloc,
                      const std::vector<std::string>& labels) {
  std::cout << name << ":\n";
  for (std::size_t a = 0; a < alloc.payouts.size(); ++a) {
    std::cout << "  " << (a < labels.size() ? labels[a] : std::to_string(a)) << ": "
              << banditgame::format_double(alloc.payouts[a]);
    if (a < alloc.stderrs.size() && alloc.stderrs[a] > 0.0)
      std::cout << " ± " << banditgame::format_double(alloc.stderrs[a]);
    std::cout << "\n";
  }
}

int cmd_simulate(const std::string& config_path, const json& overrides) {
  json doc;
  if (!config_path.empty()) doc = json::parse(banditgame::read_text_file(config_path));
  for (const auto& [key, value] : overrides.items()) doc[key] = value;
  ExperimentConfig config = ExperimentConfig::from_json(doc);
  if (config.out_dir.empty())
    throw banditgame::InvalidConfigError("simulate: --out directory is required");

  const banditgame::ExperimentResult result = banditgame::run_experiment(config);
  const json manifest = banditgame::emit_report(result, config, config.out_dir);
  std::cout << "runs: " << manifest["run_count"] << " (" << manifest["num_coalitions"]
            << " coalitions x " << manifest["repetitions"] << " reps)\n"
            << "table complete: " << (result.complete ? "yes" : "no") << "\n"
            << "artifacts: " << config.out_dir << " (" << manifest["files"].size()
            << " files, config hash " << manifest["config_hash"] << ")\n";
  if (result.payout.has_value())
    print_allocation("grand-coalition payout", *result.payout, result.agent_labels);
  if (result.shapley_per_rep.has_value())
    print_allocation("shapley (per-rep estimator)", *result.shapley_per_rep, result.agent_labels);
  if (result.more_merrier.has_value()) {
    std::cout << "more-the-merrier: " << (result.more_merrier->pass ? "pass" : "violations") << " ("
              << result.more_merrier->violations.size() << " of "
              << result.more_merrier->pairs_checked << " pairs flagged)\n";
  }
  return 0;
}

int cmd_analyze(const std::string& table_path, const std::string& out_dir, double tol_mult,
                long mc_perms, std::uint64_t seed) {
  const banditgame::RegretTable table =
      banditgame::parse_regret_table_csv(banditgame::read_text_file(table_path));
  if (!table.complete())
    throw banditgame::IncompleteTableError(
        "analyze: the table must cover all 2^M - 1 coalitions");
  const banditgame::TUGame game = banditgame::value_from_regrets(table);
  const banditgame::Allocation shapley = banditgame::shapley_exact(game);
  const banditgame::Allocation payout = banditgame::grand_payout(table);

  double max_stderr = 0.0;
  for (const auto& [mask, entries] : table.rows()) {
    for (int a = 0; a < table.num_agents(); ++a) {
      if (table.has(mask, a)) max_stderr = std::max(max_stderr, table.at(mask, a).stderr_);
    }
  }
  const double tol = tol_mult * max_stderr;

  std::vector<std::string> labels;
  for (int a = 0; a < table.num_agents(); ++a) labels.push_back(std::to_string(a));
  std::cout << "agents: " << table.num_agents() << ", tolerance: " << tol << "\n";
  print_allocation("shapley (mean game)", shapley, labels);
  print_allocation("grand-coalition payout", payout, labels);

  const auto core_shapley = banditgame::is_in_core(game, shapley, tol);
  std::cout << "shapley in core: " << (core_shapley.pass() ? "yes" : "no") << "\n";
  const auto core_payout = banditgame::is_in_core(game, payout, tol);
  std::cout << "payout in core: " << (core_payout.pass() ? "yes" : "no") << "\n";
  const auto [nonempty, witness] = banditgame::core_nonempty(game, std::max(tol, 1e-9));
  std::cout << "core non-empty: " << (nonempty ? "yes" : "no") << "\n";
  const auto convexity = banditgame::is_convex(game, tol);
  std::cout << "convex: " << (convexity.pass() ? "yes" : "no") << " ("
            << convexity.violations.size() << " violations)\n";
  const auto axioms = banditgame::axiom_report(game, payout, tol);
  std::cout << "payout axioms: efficiency " << (axioms.efficiency.pass() ? "pass" : "fail")
            << ", dummy " << (axioms.dummy.pass() ? "pass" : "fail") << ", symmetry "
            << (axioms.symmetry.pass() ? "pass" : "fail") << "\n";
  const auto merrier = banditgame::check_more_merrier(table, tol_mult);
  std::cout << "more-the-merrier at slack " << tol_mult << ": "
            << (merrier.pass ? "pass" : "violations") << " (" << merrier.violations.size()
            << " of " << merrier.pairs_checked << ")\n";

  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    banditgame::write_text_file(out_dir + "/game.csv", banditgame::game_csv(game));
    banditgame::write_text_file(out_dir + "/payout.csv", banditgame::allocation_csv(payout));
    banditgame::write_text_file(out_dir + "/shapley.csv", banditgame::allocation_csv(shapley));
    banditgame::write_text_file(out_dir + "/scatter.csv",
                                banditgame::scatter_csv(labels, shapley, payout));
    banditgame::write_text_file(out_dir + "/more_merrier_violations.txt",
                                banditgame::format_more_merrier_table(merrier));
    if (mc_perms > 0) {
      banditgame::RngStream rng(banditgame::RngStream::Key{
          seed, game.grand_mask(), 0, 0, banditgame::StreamPurpose::kShapley});
      const banditgame::Allocation mc = banditgame::shapley_mc(game, mc_perms, rng);
      banditgame::write_text_file(out_dir + "/shapley_mc.csv",
                                  banditgame::scatter_csv(labels, mc, payout));
    }
    std::cout << "wrote analysis artifacts to " << out_dir << "\n";
  }
  return 0;
}

int cmd_check_curve(const std::string& curve_path, double c, double eps, double mult,
                    int num_arms) {
  const banditgame::RegretCurve curve =
      banditgame::parse_curve_csv(banditgame::read_text_file(curve_path));
  if (c <= 0.0) {
    if (num_arms < 1)
      throw banditgame::InvalidConfigError(
          "check: pass --c, or --arms so the default c = 10 * K applies");
    c = 10.0 * num_arms;
  }
  const auto grid = banditgame::WindowGrid::default_grid(curve.horizon());
  const auto concavity = banditgame::check_strict_concavity(curve, grid, mult);
  std::cout << "strict concavity: " << (concavity.pass ? "pass" : "fail") << " ("
            << concavity.violations.size() << " of " << concavity.windows_checked
            << " windows flagged; min R'' = " << concavity.min_second
            << ", max R'' = " << concavity.max_second
            << ", empirical upsilon floor = " << concavity.upsilon_floor << ")\n";
  const auto log_limit = banditgame::check_log_limitation(curve, c, eps, grid, mult);
  std::cout << "log limitation (c=" << c << ", eps=" << eps
            << "): " << (log_limit.pass ? "pass" : "fail") << " ("
            << log_limit.violations.size() << " of " << log_limit.windows_checked
            << " windows flagged)\n";
  return concavity.pass && log_limit.pass ? 0 : 1;
}

int cmd_check_table(const std::string& table_path, double slack) {
  const banditgame::RegretTable table =
      banditgame::parse_regret_table_csv(banditgame::read_text_file(table_path));
  const auto merrier = banditgame::check_more_merrier(table, slack);
  std::cout << banditgame::format_more_merrier_table(merrier);
  std::cout << "more-the-merrier at slack " << slack << ": "
            << (merrier.pass ? "pass" : "violations") << " (" << merrier.violations.size()
            << " of " << merrier.pairs_checked << " pairs)\n";
  return merrier.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-agent bandit collaboration games"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a full coalition-enumeration experiment");
  std::string config_path;
  std::string out_dir;
  std::string algorithm;
  std::string instance_kind;
  std::string instance_file;
  std::string scope;
  std::optional<std::uint64_t> seed;
  std::optional<int> horizon;
  std::optional<int> repetitions;
  std::optional<int> parallelism;
  bool full_scale = false;
  simulate->add_option("--config", config_path, "JSON config file (keys documented in README)");
  simulate->add_option("--seed", seed, "master seed")->required();
  simulate->add_option("--out", out_dir, "output directory");
  simulate->add_option("--algorithm", algorithm,
                       "mul+ucb | mul+etc | mul+eps-greedy | metc | linucb-m | greedy");
  simulate->add_option("--instance", instance_kind, "cyclic | asymmetric | movielens | file");
  simulate->add_option("--instance-file", instance_file, "instance JSON (with --instance file)");
  simulate->add_option("--horizon", horizon, "time horizon T");
  simulate->add_option("--reps", repetitions, "repetitions per coalition");
  simulate->add_option("--scope", scope, "all | grand-only | explicit");
  simulate->add_option("--parallelism", parallelism, "worker pool width (0 = hardware)");
  simulate->add_flag("--full-scale", full_scale, "lift the desk-scale cost gate");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "game-theory reports from a regret table CSV");
  std::string table_path;
  double tol_mult = 3.0;
  long mc_perms = 0;
  std::uint64_t analyze_seed = 0;
  std::string analyze_out;
  analyze->add_option("--table", table_path, "regrets_agg.csv path")->required();
  analyze->add_option("--out", analyze_out, "directory for analysis artifacts");
  analyze->add_option("--tol-mult", tol_mult, "statistical tolerance multiplier");
  analyze->add_option("--shapley-mc", mc_perms, "also emit a Monte Carlo Shapley estimate");
  analyze->add_option("--seed", analyze_seed, "seed for the Monte Carlo estimate");

  // check
  auto* check = app.add_subcommand("check", "assumption reports on curves or regret tables");
  std::string curve_path;
  std::string check_table_path;
  double log_c = 0.0;
  double log_eps = 0.1;
  double conf_mult = 3.0;
  double slack = 0.0;
  int num_arms = 0;
  check->add_option("--curve", curve_path, "cumulative regret curve CSV (t,mean,stderr)");
  check->add_option("--table", check_table_path, "regrets_agg.csv for the more-the-merrier scan");
  check->add_option("--c", log_c, "log-limitation constant (default 10 * K via --arms)");
  check->add_option("--arms", num_arms, "action-set size K, for the default c = 10 * K");
  check->add_option("--eps", log_eps, "log-limitation exponent margin");
  check->add_option("--mult", conf_mult, "confidence multiplier for noise-aware checks");
  check->add_option("--slack", slack, "stderr slack multiplier for the table scan");

  // instance
  auto* instance = app.add_subcommand("instance", "build and serialize a problem instance");
  std::string family;
  std::string instance_out;
  int inst_horizon = 512;
  double sigma = 1.0;
  std::string ratings_path;
  std::string users_path;
  std::string attribute = "gender";
  int embed_d = 20;
  int max_users = 0;
  int max_movies = 0;
  std::string zip_table;
  std::string embedding_file;
  std::string embedding_out;
  instance->add_option("--family", family, "cyclic | asymmetric | movielens")->required();
  instance->add_option("--out", instance_out, "instance JSON output path")->required();
  instance->add_option("--horizon", inst_horizon, "time horizon T");
  instance->add_option("--sigma", sigma, "reward noise std");
  instance->add_option("--ratings", ratings_path, "MovieLens u.data path");
  instance->add_option("--users", users_path, "MovieLens u.user path");
  instance->add_option("--attribute", attribute, "gender | age | occupation | geography");
  instance->add_option("--d", embed_d, "embedding dimension");
  instance->add_option("--max-users", max_users, "keep the N most-rated users (0 = all)");
  instance->add_option("--max-movies", max_movies, "keep the N most-rated movies (0 = all)");
  instance->add_option("--zip-table", zip_table, "ZIP prefix table (geography only)");
  instance->add_option("--embedding-file", embedding_file, "external movie embeddings");
  instance->add_option("--save-embeddings", embedding_out, "also write the movie embeddings");
  bool generator_form = false;
  instance->add_flag("--generator-form", generator_form,
                     "store the generator name + parameters instead of explicit actions");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      json overrides;
      overrides["seed"] = *seed;
      if (!out_dir.empty()) overrides["out_dir"] = out_dir;
      if (!algorithm.empty()) overrides["algorithm"] = algorithm;
      if (!instance_kind.empty()) overrides["instance_kind"] = instance_kind;
      if (!instance_file.empty()) overrides["instance_file"] = instance_file;
      if (!scope.empty()) overrides["scope"] = scope;
      if (horizon.has_value()) overrides["horizon"] = *horizon;
      if (repetitions.has_value()) overrides["repetitions"] = *repetitions;
      if (parallelism.has_value()) overrides["parallelism"] = *parallelism;
      if (full_scale) overrides["full_scale"] = true;
      return cmd_simulate(config_path, overrides);
    }
    if (analyze->parsed()) {
      return cmd_analyze(table_path, analyze_out, tol_mult, mc_perms, analyze_seed);
    }
    if (check->parsed()) {
      if (!curve_path.empty())
        return cmd_check_curve(curve_path, log_c, log_eps, conf_mult, num_arms);
      if (!check_table_path.empty()) return cmd_check_table(check_table_path, slack);
      std::cerr << "check: pass --curve or --table\n";
      return 2;
    }
    if (instance->parsed()) {
      if (family == "cyclic" || family == "asymmetric") {
        banditgame::SyntheticSpec spec;
        spec.family = family == "cyclic" ? banditgame::SyntheticFamily::kCyclicSymmetric
                                         : banditgame::SyntheticFamily::kAsymmetricHub;
        spec.horizon = inst_horizon;
        spec.noise_std = sigma;
        const banditgame::ProblemInstance inst = family == "cyclic"
                                                     ? banditgame::make_cyclic_synthetic(spec)
                                                     : banditgame::make_asymmetric_synthetic(spec);
        if (generator_form) {
          banditgame::save_generator_instance(
              instance_out, family == "cyclic" ? "cyclic-symmetric" : "asymmetric-hub",
              inst_horizon, sigma);
        } else {
          banditgame::save_instance(instance_out, inst);
        }
        std::cout << "wrote " << instance_out << " (" << inst.num_agents() << " agents, d="
                  << inst.dimension() << ", T=" << inst.horizon() << ")\n";
        return 0;
      }
      if (family == "movielens") {
        banditgame::MovieLensSpec spec;
        spec.ratings_path = ratings_path;
        spec.users_path = users_path;
        spec.attribute = banditgame::parse_attribute(attribute);
        spec.embedding_dim = embed_d;
        spec.horizon = inst_horizon;
        spec.noise_std = sigma;
        spec.max_users = max_users;
        spec.max_movies = max_movies;
        spec.zip_table_path = zip_table;
        spec.embedding_file = embedding_file;
        const banditgame::MovieLensInstance ml = banditgame::load_movielens(spec);
        banditgame::save_instance(instance_out, ml.instance, ml.agent_labels);
        if (!embedding_out.empty())
          banditgame::save_embedding_file(embedding_out, ml.instance.action_set(0, 1).actions);
        std::cout << "wrote " << instance_out << " (" << ml.instance.num_agents()
                  << " agents, " << ml.num_movies << " actions, d=" << ml.instance.dimension()
                  << ", " << ml.num_users << " users)\n";
        return 0;
      }
      std::cerr << "instance: unknown family '" << family << "'\n";
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    try {
      std::rethrow_if_nested(e);
    } catch (const std::exception& nested) {
      std::cerr << "  caused by: " << nested.what() << "\n";
    } catch (...) {
    }
    return 1;
  }
  return 0;
}
