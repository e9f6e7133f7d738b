#include "banditgame/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "banditgame/errors.hpp"
#include "banditgame/policies.hpp"

namespace banditgame {

using nlohmann::json;

namespace {

CoalitionScope parse_scope(const std::string& name) {
  if (name == "all") return CoalitionScope::kAll;
  if (name == "grand-only") return CoalitionScope::kGrandOnly;
  if (name == "explicit") return CoalitionScope::kExplicit;
  throw InvalidConfigError("unknown scope '" + name + "' (expected all, grand-only, explicit)");
}

std::string scope_name(CoalitionScope scope) {
  switch (scope) {
    case CoalitionScope::kAll: return "all";
    case CoalitionScope::kGrandOnly: return "grand-only";
    case CoalitionScope::kExplicit: return "explicit";
  }
  return "unknown";
}

int default_explore_len(int horizon) {
  return static_cast<int>(std::ceil(std::pow(static_cast<double>(horizon), 2.0 / 3.0)));
}

std::unique_ptr<SinglePolicy> make_sin_policy(const ExperimentConfig& config) {
  if (config.algorithm == "mul+ucb") return std::make_unique<UcbPolicy>(config.ucb_width);
  if (config.algorithm == "mul+etc")
    return std::make_unique<ExploreThenCommitPolicy>(config.etc_pulls_per_arm);
  if (config.algorithm == "mul+eps-greedy")
    return std::make_unique<EpsGreedyPolicy>(config.eps_greedy_epsilon);
  throw InvalidConfigError("unknown shared-buffer policy variant '" + config.algorithm + "'");
}

struct InstanceBundle {
  ProblemInstance instance;
  std::vector<std::string> labels;
};

InstanceBundle build_instance(const ExperimentConfig& config) {
  InstanceBundle bundle;
  if (config.instance_kind == "cyclic") {
    SyntheticSpec spec = config.synthetic;
    spec.family = SyntheticFamily::kCyclicSymmetric;
    spec.horizon = config.horizon;
    bundle.instance = make_cyclic_synthetic(spec);
  } else if (config.instance_kind == "asymmetric") {
    SyntheticSpec spec = config.synthetic;
    spec.family = SyntheticFamily::kAsymmetricHub;
    spec.horizon = config.horizon;
    bundle.instance = make_asymmetric_synthetic(spec);
  } else if (config.instance_kind == "movielens") {
    MovieLensSpec spec = config.movielens;
    spec.horizon = config.horizon;
    MovieLensInstance ml = load_movielens(spec);
    bundle.instance = std::move(ml.instance);
    bundle.labels = std::move(ml.agent_labels);
  } else if (config.instance_kind == "file") {
    bundle.instance = load_instance(config.instance_file, &bundle.labels);
  } else {
    throw InvalidConfigError("unknown instance kind '" + config.instance_kind +
                             "' (expected cyclic, asymmetric, movielens, file)");
  }
  if (bundle.labels.empty()) {
    for (int a = 0; a < bundle.instance.num_agents(); ++a)
      bundle.labels.push_back(std::to_string(a));
  }
  return bundle;
}

// Desk-scale cost gate: full-paper sizes run for a long time, so they
// sit behind an explicit flag.
void check_cost_gate(const ExperimentConfig& config, const ProblemInstance& instance,
                     std::size_t num_masks) {
  if (config.full_scale) return;
  const double actions = static_cast<double>(instance.action_set(0, 1).size());
  const double cost = static_cast<double>(num_masks) * config.repetitions *
                      static_cast<double>(instance.horizon()) * actions *
                      static_cast<double>(instance.dimension());
  if (cost > 1e10)
    throw InvalidConfigError(
        "estimated run cost exceeds the desk-scale gate; rerun with full_scale=true to confirm");
}

}  // namespace

std::vector<std::uint64_t> enumerate_coalitions(int num_agents, CoalitionScope scope,
                                                const std::vector<std::uint64_t>& explicit_masks) {
  if (num_agents < 1) throw InvalidConfigError("enumerate_coalitions: num_agents must be >= 1");
  const std::uint64_t grand = (1ULL << num_agents) - 1;
  switch (scope) {
    case CoalitionScope::kAll: {
      if (num_agents > 16)
        throw InvalidConfigError(
            "enumerate_coalitions: scope 'all' is guarded at 16 agents; pass an explicit "
            "coalition list instead");
      std::vector<std::uint64_t> masks;
      masks.reserve(grand);
      for (std::uint64_t mask = 1; mask <= grand; ++mask) masks.push_back(mask);
      return masks;
    }
    case CoalitionScope::kGrandOnly:
      return {grand};
    case CoalitionScope::kExplicit: {
      std::vector<std::uint64_t> masks = explicit_masks;
      std::sort(masks.begin(), masks.end());
      masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
      if (masks.empty()) throw InvalidConfigError("enumerate_coalitions: empty explicit list");
      for (std::uint64_t mask : masks) {
        if (mask == 0 || mask > grand)
          throw InvalidConfigError("enumerate_coalitions: explicit mask out of range");
      }
      return masks;
    }
  }
  throw InvalidConfigError("enumerate_coalitions: unknown scope");
}

CoalitionRunResult run_coalition(const ExperimentConfig& config, const ProblemInstance& instance,
                                 std::uint64_t mask, const RunKey& key) {
  if (config.algorithm.rfind("mul+", 0) == 0) {
    const std::unique_ptr<SinglePolicy> sin = make_sin_policy(config);
    return run_mul(*sin, mask, instance, key);
  }
  if (config.algorithm == "metc") {
    const int explore = config.metc_explore_len > 0 ? config.metc_explore_len
                                                    : default_explore_len(instance.horizon());
    return run_metc(mask, instance, explore, config.metc_ridge, key);
  }
  if (config.algorithm == "linucb-m") {
    LinUcbParams params = config.linucb;
    params.noise_std = instance.noise_std();
    return run_linucb_m(mask, instance, params, key);
  }
  if (config.algorithm == "greedy") {
    return run_greedy(mask, instance, config.greedy, key);
  }
  throw InvalidConfigError("unknown algorithm '" + config.algorithm +
                           "' (expected mul+ucb, mul+etc, mul+eps-greedy, metc, linucb-m, greedy)");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.horizon < 1 || config.repetitions < 1)
    throw InvalidConfigError("run_experiment: horizon and repetitions must be >= 1");

  InstanceBundle bundle = build_instance(config);
  const int num_agents = bundle.instance.num_agents();
  // File-backed instances carry their own horizon; it wins.
  const int horizon = bundle.instance.horizon();
  const std::vector<std::uint64_t> masks =
      enumerate_coalitions(num_agents, config.scope, config.explicit_masks);
  check_cost_gate(config, bundle.instance, masks.size());

  struct Task {
    std::uint64_t mask = 0;
    int rep = 0;
  };
  std::vector<Task> tasks;
  tasks.reserve(masks.size() * static_cast<std::size_t>(config.repetitions));
  for (std::uint64_t mask : masks) {
    for (int rep = 0; rep < config.repetitions; ++rep) tasks.push_back(Task{mask, rep});
  }

  // Worker pool over (mask, rep); each slot is written by exactly one
  // task, so aggregation order never depends on scheduling.
  struct TaskOutput {
    std::vector<double> member_regrets;
    std::vector<Trajectory> trajectories;
    bool keep_trajectories = false;
  };
  std::vector<TaskOutput> outputs(tasks.size());
  const std::uint64_t grand = (1ULL << num_agents) - 1;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t width =
      std::min(tasks.size(), static_cast<std::size_t>(config.parallelism > 0
                                                          ? static_cast<unsigned>(config.parallelism)
                                                          : hw));
  auto worker = [&]() {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      try {
        const RunKey key{config.seed, task.mask, static_cast<std::uint32_t>(task.rep)};
        CoalitionRunResult run = run_coalition(config, bundle.instance, task.mask, key);
        TaskOutput& out = outputs[i];
        out.member_regrets.reserve(run.members.size());
        for (const Trajectory& trajectory : run.trajectories)
          out.member_regrets.push_back(trajectory.regret_curve.back());
        const bool want_curves = config.emit_curves && task.mask == grand;
        const bool want_traj = config.emit_trajectories && task.mask == grand && task.rep == 0;
        if (want_curves || want_traj) {
          out.trajectories = std::move(run.trajectories);
          out.keep_trajectories = want_traj;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) {
          try {
            std::throw_with_nested(std::runtime_error(
                "run failed for coalition " + coalition_to_string(task.mask) + ", repetition " +
                std::to_string(task.rep)));
          } catch (...) {
            error = std::current_exception();
          }
        }
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w + 1 < width; ++w) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();
  if (failed.load()) std::rethrow_exception(error);

  ExperimentResult result;
  result.instance = std::move(bundle.instance);
  result.agent_labels = std::move(bundle.labels);
  result.masks = masks;
  result.repetitions = config.repetitions;
  result.table = RegretTable(num_agents);

  // Raw rows in (mask, agent, rep) order, then aggregation.
  for (std::size_t mi = 0; mi < masks.size(); ++mi) {
    const std::uint64_t mask = masks[mi];
    const std::vector<int> members = mask_members(mask);
    for (std::size_t a = 0; a < members.size(); ++a) {
      double sum = 0.0;
      double sumsq = 0.0;
      for (int rep = 0; rep < config.repetitions; ++rep) {
        const std::size_t task_index = mi * static_cast<std::size_t>(config.repetitions) +
                                       static_cast<std::size_t>(rep);
        const double regret = outputs[task_index].member_regrets[a];
        result.raw.push_back(RawRegretRow{mask, members[a], rep, regret});
        sum += regret;
        sumsq += regret * regret;
      }
      const double mean = sum / config.repetitions;
      double se = 0.0;
      if (config.repetitions > 1) {
        const double var =
            std::max(0.0, (sumsq - config.repetitions * mean * mean) / (config.repetitions - 1));
        se = std::sqrt(var / config.repetitions);
      }
      result.table.set(mask, members[a], RegretEntry{mean, se, config.repetitions});
    }
  }
  result.complete = result.table.complete();

  // Grand-coalition curves (mean and standard error across reps).
  const auto grand_it = std::find(masks.begin(), masks.end(), grand);
  const auto grand_pos = static_cast<std::size_t>(grand_it - masks.begin());
  if (config.emit_curves && grand_it != masks.end()) {
    for (int a = 0; a < num_agents; ++a) {
      RegretCurve curve;
      curve.num_reps = config.repetitions;
      curve.values.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
      curve.stderrs.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
      std::vector<double> sumsq(static_cast<std::size_t>(horizon) + 1, 0.0);
      for (int rep = 0; rep < config.repetitions; ++rep) {
        const TaskOutput& out =
            outputs[grand_pos * static_cast<std::size_t>(config.repetitions) +
                    static_cast<std::size_t>(rep)];
        const std::vector<double>& rc = out.trajectories[static_cast<std::size_t>(a)].regret_curve;
        for (std::size_t t = 1; t < curve.values.size(); ++t) {
          curve.values[t] += rc[t - 1];
          sumsq[t] += rc[t - 1] * rc[t - 1];
        }
      }
      for (std::size_t t = 1; t < curve.values.size(); ++t) {
        const double mean = curve.values[t] / config.repetitions;
        curve.values[t] = mean;
        if (config.repetitions > 1) {
          const double var = std::max(
              0.0, (sumsq[t] - config.repetitions * mean * mean) / (config.repetitions - 1));
          curve.stderrs[t] = std::sqrt(var / config.repetitions);
        }
      }
      result.grand_curves.push_back(std::move(curve));
    }
  }
  if (config.emit_trajectories && grand_it != masks.end()) {
    const TaskOutput& out = outputs[grand_pos * static_cast<std::size_t>(config.repetitions)];
    if (out.keep_trajectories) result.grand_trajectories = out.trajectories;
  }

  // Game-theoretic outputs need the full coalition enumeration.
  if (result.complete) {
    result.mean_game = value_from_regrets(result.table);
    const bool exact = num_agents <= config.shapley_exact_limit;

    // Per-repetition games -> per-repetition Shapley -> mean, stderr.
    std::vector<std::vector<double>> per_rep(static_cast<std::size_t>(config.repetitions));
    std::map<std::pair<std::uint64_t, int>, std::vector<double>> raw_lookup;
    for (const RawRegretRow& row : result.raw) {
      auto& slot = raw_lookup[{row.mask, row.agent}];
      slot.resize(static_cast<std::size_t>(config.repetitions));
      slot[static_cast<std::size_t>(row.rep)] = row.regret;
    }
    for (int rep = 0; rep < config.repetitions; ++rep) {
      TUGame game;
      game.num_agents = num_agents;
      game.values.assign(1ULL << num_agents, 0.0);
      for (std::uint64_t mask = 1; mask <= grand; ++mask) {
        double sum = 0.0;
        for (int a = 0; a < num_agents; ++a) {
          if (mask & (1ULL << a))
            sum += raw_lookup.at({mask, a})[static_cast<std::size_t>(rep)];
        }
        game.values[mask] = -sum;
      }
      Allocation alloc;
      if (exact) {
        alloc = shapley_exact(game, config.shapley_exact_limit);
      } else {
        RngStream rng(RngStream::Key{config.seed, grand, static_cast<std::uint32_t>(rep), 0,
                                     StreamPurpose::kShapley});
        alloc = shapley_mc(game, config.shapley_mc_perms, rng);
      }
      per_rep[static_cast<std::size_t>(rep)] = alloc.payouts;
    }
    Allocation shapley;
    shapley.kind = exact ? AllocationKind::kShapleyExact : AllocationKind::kShapleyMc;
    shapley.payouts.assign(static_cast<std::size_t>(num_agents), 0.0);
    shapley.stderrs.assign(static_cast<std::size_t>(num_agents), 0.0);
    for (int a = 0; a < num_agents; ++a) {
      double sum = 0.0;
      double sumsq = 0.0;
      for (int rep = 0; rep < config.repetitions; ++rep) {
        const double value = per_rep[static_cast<std::size_t>(rep)][static_cast<std::size_t>(a)];
        sum += value;
        sumsq += value * value;
      }
      const double mean = sum / config.repetitions;
      shapley.payouts[static_cast<std::size_t>(a)] = mean;
      if (config.repetitions > 1) {
        const double var =
            std::max(0.0, (sumsq - config.repetitions * mean * mean) / (config.repetitions - 1));
        shapley.stderrs[static_cast<std::size_t>(a)] = std::sqrt(var / config.repetitions);
      }
    }
    result.shapley_per_rep = std::move(shapley);
    if (exact) {
      result.shapley_of_mean_game = shapley_exact(*result.mean_game, config.shapley_exact_limit);
    } else {
      RngStream rng(
          RngStream::Key{config.seed, grand, 0xffffffffu, 0, StreamPurpose::kShapley});
      result.shapley_of_mean_game = shapley_mc(*result.mean_game, config.shapley_mc_perms, rng);
    }
    result.more_merrier = check_more_merrier(result.table, config.more_merrier_slack);
  }

  // The payout needs only the grand coalition.
  if (std::find(masks.begin(), masks.end(), grand) != masks.end()) {
    result.payout = grand_payout(result.table);
  }

  return result;
}

nlohmann::json emit_report(const ExperimentResult& result, const ExperimentConfig& config,
                           const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());

  std::vector<std::string> files;
  auto emit = [&](const std::string& name, const std::string& content) {
    write_text_file(dir + "/" + name, content);
    files.push_back(name);
  };

  emit("regrets_raw.csv", raw_regrets_csv(result.raw));
  emit("regrets_agg.csv", regret_table_csv(result.table));
  if (result.mean_game.has_value()) emit("game.csv", game_csv(*result.mean_game));
  if (result.payout.has_value()) emit("payout.csv", allocation_csv(*result.payout));
  if (result.shapley_per_rep.has_value())
    emit("shapley.csv", allocation_csv(*result.shapley_per_rep));
  if (result.shapley_per_rep.has_value() && result.payout.has_value()) {
    emit("scatter.csv", scatter_csv(result.agent_labels, *result.shapley_per_rep, *result.payout));
    // Identity-line aid: two corner points spanning the observed range.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < result.payout->payouts.size(); ++a) {
      for (const double v : {result.payout->payouts[a], result.shapley_per_rep->payouts[a]}) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    emit("identity_line.csv",
         "x,y\n" + format_double(lo) + "," + format_double(lo) + "\n" + format_double(hi) + "," +
             format_double(hi) + "\n");
  }
  if (result.shapley_of_mean_game.has_value()) {
    std::string body = "agent,label,shapley_mean_game\n";
    for (std::size_t a = 0; a < result.shapley_of_mean_game->payouts.size(); ++a) {
      body += std::to_string(a) + "," + result.agent_labels[a] + "," +
              format_double(result.shapley_of_mean_game->payouts[a]) + "\n";
    }
    emit("shapley_mean_game.csv", body);
  }
  if (result.more_merrier.has_value()) {
    emit("more_merrier_violations.txt", format_more_merrier_table(*result.more_merrier));
  }
  for (std::size_t a = 0; a < result.grand_curves.size(); ++a) {
    emit("curve_grand_agent" + std::to_string(a) + ".csv", curve_csv(result.grand_curves[a]));
  }
  if (!result.grand_trajectories.empty()) {
    emit("trajectories_grand_rep0.csv", trajectory_csv(result.grand_trajectories));
  }

  json manifest;
  manifest["format"] = "banditgame-manifest-v1";
  manifest["versions"] = {
      {"banditgame", "1.0.0"},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                    "." + std::to_string(EIGEN_MINOR_VERSION)}};
  const json resolved = config.to_json();
  manifest["config"] = resolved;
  manifest["config_hash"] = fnv1a_hex(resolved.dump());
  manifest["seed"] = config.seed;
  manifest["num_agents"] = result.instance.num_agents();
  manifest["num_coalitions"] = result.masks.size();
  manifest["repetitions"] = result.repetitions;
  manifest["run_count"] = result.masks.size() * static_cast<std::size_t>(result.repetitions);
  manifest["table_complete"] = result.complete;
  manifest["agent_labels"] = result.agent_labels;
  manifest["files"] = files;
  write_text_file(dir + "/manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
  ExperimentConfig config;
  auto get = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    return doc.contains(key) ? doc.at(key).get<T>() : fallback;
  };
  config.instance_kind = get("instance_kind", config.instance_kind);
  config.instance_file = get("instance_file", config.instance_file);
  config.synthetic.noise_std = get("noise_std", config.synthetic.noise_std);
  config.movielens.noise_std = config.synthetic.noise_std;
  config.movielens.ratings_path = get("movielens_ratings", config.movielens.ratings_path);
  config.movielens.users_path = get("movielens_users", config.movielens.users_path);
  if (doc.contains("movielens_attribute"))
    config.movielens.attribute = parse_attribute(doc.at("movielens_attribute").get<std::string>());
  config.movielens.embedding_dim = get("movielens_d", config.movielens.embedding_dim);
  config.movielens.max_users = get("movielens_max_users", config.movielens.max_users);
  config.movielens.max_movies = get("movielens_max_movies", config.movielens.max_movies);
  config.movielens.rescale_ratings = get("movielens_rescale", config.movielens.rescale_ratings);
  config.movielens.theta_ridge = get("movielens_theta_ridge", config.movielens.theta_ridge);
  config.movielens.embedding_file = get("movielens_embedding_file", config.movielens.embedding_file);
  config.movielens.zip_table_path = get("movielens_zip_table", config.movielens.zip_table_path);
  if (doc.contains("movielens_age_brackets"))
    config.movielens.age_brackets = doc.at("movielens_age_brackets").get<std::vector<int>>();

  config.algorithm = get("algorithm", config.algorithm);
  config.ucb_width = get("ucb_width", config.ucb_width);
  config.etc_pulls_per_arm = get("etc_pulls_per_arm", config.etc_pulls_per_arm);
  config.eps_greedy_epsilon = get("eps_greedy_epsilon", config.eps_greedy_epsilon);
  config.metc_explore_len = get("metc_explore_len", config.metc_explore_len);
  config.metc_ridge = get("metc_ridge", config.metc_ridge);
  config.linucb.ridge = get("linucb_ridge", config.linucb.ridge);
  config.linucb.delta = get("linucb_delta", config.linucb.delta);
  config.linucb.theta_bound = get("linucb_theta_bound", config.linucb.theta_bound);
  config.linucb.action_bound = get("linucb_action_bound", config.linucb.action_bound);
  config.greedy.ridge = get("greedy_ridge", config.greedy.ridge);
  config.greedy.warmup = get("greedy_warmup", config.greedy.warmup);

  config.horizon = get("horizon", config.horizon);
  config.repetitions = get("repetitions", config.repetitions);
  config.seed = get("seed", config.seed);
  config.scope = parse_scope(get("scope", std::string("all")));
  if (doc.contains("coalitions"))
    config.explicit_masks = doc.at("coalitions").get<std::vector<std::uint64_t>>();
  config.out_dir = get("out_dir", config.out_dir);
  config.tolerance_mult = get("tolerance_mult", config.tolerance_mult);
  config.more_merrier_slack = get("more_merrier_slack", config.more_merrier_slack);
  config.parallelism = get("parallelism", config.parallelism);
  config.emit_curves = get("emit_curves", config.emit_curves);
  config.emit_trajectories = get("emit_trajectories", config.emit_trajectories);
  config.full_scale = get("full_scale", config.full_scale);
  config.shapley_exact_limit = get("shapley_exact_limit", config.shapley_exact_limit);
  config.shapley_mc_perms = get("shapley_mc_perms", config.shapley_mc_perms);
  return config;
}

json ExperimentConfig::to_json() const {
  json doc;
  doc["instance_kind"] = instance_kind;
  if (!instance_file.empty()) doc["instance_file"] = instance_file;
  doc["noise_std"] = synthetic.noise_std;
  if (instance_kind == "movielens") {
    doc["movielens_ratings"] = movielens.ratings_path;
    doc["movielens_users"] = movielens.users_path;
    doc["movielens_attribute"] = attribute_name(movielens.attribute);
    doc["movielens_d"] = movielens.embedding_dim;
    doc["movielens_max_users"] = movielens.max_users;
    doc["movielens_max_movies"] = movielens.max_movies;
    doc["movielens_rescale"] = movielens.rescale_ratings;
    doc["movielens_theta_ridge"] = movielens.theta_ridge;
    if (!movielens.embedding_file.empty())
      doc["movielens_embedding_file"] = movielens.embedding_file;
    if (!movielens.zip_table_path.empty()) doc["movielens_zip_table"] = movielens.zip_table_path;
    doc["movielens_age_brackets"] = movielens.age_brackets;
  }
  doc["algorithm"] = algorithm;
  if (algorithm == "mul+ucb") doc["ucb_width"] = ucb_width;
  if (algorithm == "mul+etc") doc["etc_pulls_per_arm"] = etc_pulls_per_arm;
  if (algorithm == "mul+eps-greedy") doc["eps_greedy_epsilon"] = eps_greedy_epsilon;
  if (algorithm == "metc") {
    doc["metc_explore_len"] = metc_explore_len;
    doc["metc_ridge"] = metc_ridge;
  }
  if (algorithm == "linucb-m") {
    doc["linucb_ridge"] = linucb.ridge;
    doc["linucb_delta"] = linucb.delta;
    doc["linucb_theta_bound"] = linucb.theta_bound;
    doc["linucb_action_bound"] = linucb.action_bound;
  }
  if (algorithm == "greedy") {
    doc["greedy_ridge"] = greedy.ridge;
    doc["greedy_warmup"] = greedy.warmup;
  }
  doc["horizon"] = horizon;
  doc["repetitions"] = repetitions;
  doc["seed"] = seed;
  doc["scope"] = scope_name(scope);
  if (scope == CoalitionScope::kExplicit) doc["coalitions"] = explicit_masks;
  doc["tolerance_mult"] = tolerance_mult;
  doc["more_merrier_slack"] = more_merrier_slack;
  doc["parallelism"] = parallelism;
  doc["emit_curves"] = emit_curves;
  doc["emit_trajectories"] = emit_trajectories;
  doc["full_scale"] = full_scale;
  doc["shapley_exact_limit"] = shapley_exact_limit;
  doc["shapley_mc_perms"] = shapley_mc_perms;
  return doc;
}

}  // namespace banditgame
