#include "banditgame/runners.hpp"

#include <deque>
#include <stdexcept>
#include <string>

#include "banditgame/errors.hpp"

namespace banditgame {

namespace {

std::vector<int> checked_members(std::uint64_t mask, const ProblemInstance& instance,
                                 const char* where) {
  std::vector<int> members = mask_members(mask);
  if (members.empty()) throw InvalidInputError(std::string(where) + ": empty coalition");
  if (members.back() >= instance.num_agents())
    throw InvalidInputError(std::string(where) + ": coalition member out of range");
  return members;
}

void finalize_curves(const ProblemInstance& instance, CoalitionRunResult& result) {
  for (Trajectory& trajectory : result.trajectories)
    trajectory.regret_curve = pseudo_regret_curve(instance, trajectory);
}

// The agent's set must be the same object at every step for policies
// that key statistics by action index.
const ActionSet& time_invariant_set(const ProblemInstance& instance, int agent,
                                    const char* where) {
  if (instance.layout() == ActionLayout::kPerAgentPerTime)
    throw UnsupportedInstanceError(std::string(where) +
                                   ": requires a time-invariant action set per agent");
  return instance.action_set(agent, 1);
}

}  // namespace

double CoalitionRunResult::agent_regret(int agent) const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == agent)
      return trajectories[i].regret_curve.empty() ? 0.0 : trajectories[i].regret_curve.back();
  }
  throw InvalidInputError("CoalitionRunResult::agent_regret: agent not in coalition");
}

double CoalitionRunResult::total_regret() const {
  double total = 0.0;
  for (const Trajectory& trajectory : trajectories)
    total += trajectory.regret_curve.empty() ? 0.0 : trajectory.regret_curve.back();
  return total;
}

std::vector<int> mask_members(std::uint64_t mask) {
  std::vector<int> members;
  for (int a = 0; mask != 0; ++a, mask >>= 1) {
    if (mask & 1ULL) members.push_back(a);
  }
  return members;
}

Trajectory run_single(const SinglePolicy& policy, const ProblemInstance& instance, int agent,
                      int horizon, const RunKey& key) {
  if (horizon < 1) throw InvalidInputError("run_single: horizon must be >= 1");
  if (agent < 0 || agent >= instance.num_agents())
    throw InvalidInputError("run_single: agent id out of range");
  if (horizon > instance.horizon() && !instance.fixed_actions())
    throw UnsupportedInstanceError(
        "run_single: horizon past the instance horizon needs a shared fixed action set");
  const ActionSet& set = time_invariant_set(instance, agent, "run_single");

  std::unique_ptr<SinglePolicy> sin = policy.clone();
  sin->reset(set);
  RngStream policy_rng = key.stream(static_cast<std::uint32_t>(agent), StreamPurpose::kPolicy);
  RngStream reward_rng = key.stream(static_cast<std::uint32_t>(agent), StreamPurpose::kRewardNoise);

  Trajectory trajectory;
  trajectory.agent = agent;
  trajectory.entries.reserve(static_cast<std::size_t>(horizon));
  for (int t = 1; t <= horizon; ++t) {
    const int index = sin->choose(policy_rng);
    if (index < 0 || index >= set.size())
      throw ProtocolViolationError("run_single: policy returned action index " +
                                   std::to_string(index) + " outside the offered set");
    const double reward = sample_reward(instance, set.actions.row(index).transpose(), reward_rng);
    trajectory.entries.push_back(TrajectoryEntry{t, index, reward});
    sin->observe(index, reward);
  }
  trajectory.regret_curve = pseudo_regret_curve(instance, trajectory);
  return trajectory;
}

CoalitionRunResult run_mul(const SinglePolicy& sin_prototype, std::uint64_t coalition_mask,
                           const ProblemInstance& instance, const RunKey& key) {
  if (!instance.fixed_actions())
    throw UnsupportedInstanceError("run_mul: requires a shared fixed action set");
  CoalitionRunResult result;
  result.members = checked_members(coalition_mask, instance, "run_mul");
  const ActionSet& set = instance.action_set(result.members.front(), 1);
  const int num_actions = set.size();
  const long m = static_cast<long>(result.members.size());
  const long horizon = instance.horizon();

  std::unique_ptr<SinglePolicy> sin = sin_prototype.clone();
  sin->reset(set);
  RngStream policy_rng =
      key.stream(static_cast<std::uint32_t>(result.members.front()), StreamPurpose::kPolicy);
  std::vector<RngStream> reward_rngs;
  reward_rngs.reserve(result.members.size());
  for (int agent : result.members)
    reward_rngs.push_back(key.stream(static_cast<std::uint32_t>(agent), StreamPurpose::kRewardNoise));

  result.trajectories.resize(result.members.size());
  for (std::size_t i = 0; i < result.members.size(); ++i) {
    result.trajectories[i].agent = result.members[i];
    result.trajectories[i].entries.reserve(static_cast<std::size_t>(horizon));
  }

  std::vector<std::deque<double>> buffers(static_cast<std::size_t>(num_actions));
  long consumed = 0;

  int requested = sin->choose(policy_rng);
  auto check_requested = [&](int index) {
    if (index < 0 || index >= num_actions)
      throw ProtocolViolationError("run_mul: policy returned action index " +
                                   std::to_string(index) + " outside the offered set");
  };
  check_requested(requested);

  for (int t = 1; t <= horizon; ++t) {
    // The requested action's buffer is empty here; every member plays
    // it once and queues the observed reward (ascending agent order).
    for (std::size_t i = 0; i < result.members.size(); ++i) {
      const double reward =
          sample_reward(instance, set.actions.row(requested).transpose(), reward_rngs[i]);
      result.trajectories[i].entries.push_back(TrajectoryEntry{t, requested, reward});
      buffers[static_cast<std::size_t>(requested)].push_back(reward);
    }
    // Virtual clock: feed the policy until it requests an action with
    // an empty buffer.
    while (!buffers[static_cast<std::size_t>(requested)].empty()) {
      const double reward = buffers[static_cast<std::size_t>(requested)].front();
      buffers[static_cast<std::size_t>(requested)].pop_front();
      sin->observe(requested, reward);
      ++consumed;
      requested = sin->choose(policy_rng);
      check_requested(requested);
    }
  }

  long residue = 0;
  for (const auto& buffer : buffers) residue += static_cast<long>(buffer.size());
  result.mul = MulDiagnostics{consumed, residue};
  if (consumed + residue != m * horizon || consumed < m * horizon - m * num_actions ||
      consumed > m * horizon)
    throw std::logic_error("run_mul: buffer accounting out of bounds");

  finalize_curves(instance, result);
  return result;
}

CoalitionRunResult run_metc(std::uint64_t coalition_mask, const ProblemInstance& instance,
                            int explore_len, double ridge, const RunKey& key) {
  if (explore_len < 1 || explore_len >= instance.horizon())
    throw InvalidConfigError("run_metc: need 1 <= explore_len < horizon");
  if (ridge < 0.0) throw InvalidConfigError("run_metc: ridge must be non-negative");
  CoalitionRunResult result;
  result.members = checked_members(coalition_mask, instance, "run_metc");
  const int d = instance.dimension();
  const int horizon = instance.horizon();

  std::vector<RngStream> reward_rngs;
  for (int agent : result.members)
    reward_rngs.push_back(key.stream(static_cast<std::uint32_t>(agent), StreamPurpose::kRewardNoise));

  result.trajectories.resize(result.members.size());
  for (std::size_t i = 0; i < result.members.size(); ++i) {
    result.trajectories[i].agent = result.members[i];
    result.trajectories[i].entries.reserve(static_cast<std::size_t>(horizon));
  }

  // Exploration: each agent grows its own design matrix; rewards are
  // observed and pooled but never consulted here.
  PooledDataset pool(d);
  std::vector<Eigen::MatrixXd> designs(result.members.size(), Eigen::MatrixXd::Zero(d, d));
  for (int t = 1; t <= explore_len; ++t) {
    std::vector<PooledSample> step_pairs;
    step_pairs.reserve(result.members.size());
    for (std::size_t i = 0; i < result.members.size(); ++i) {
      const int agent = result.members[i];
      const ActionSet& set = instance.action_set(agent, t);
      const int index = detmax_action_index(set, designs[i]);
      const Eigen::VectorXd x = set.actions.row(index).transpose();
      designs[i].selfadjointView<Eigen::Lower>().rankUpdate(x);
      designs[i].triangularView<Eigen::StrictlyUpper>() = designs[i].transpose();
      const double reward = sample_reward(instance, x, reward_rngs[i]);
      result.trajectories[i].entries.push_back(TrajectoryEntry{t, index, reward});
      step_pairs.push_back(PooledSample{x, reward});
    }
    pool.append_others(std::move(step_pairs));
  }

  Eigen::VectorXd theta_hat;
  try {
    theta_hat = pooled_ols(pool, ridge).theta_hat;
  } catch (const SingularDesignError&) {
    // Tiny ridge keeps the estimate total on singular designs.
    theta_hat = pooled_ols(pool, 1e-8).theta_hat;
  }

  // Commit: every agent plays the estimate's argmax on its own set.
  for (std::size_t i = 0; i < result.members.size(); ++i) {
    const int agent = result.members[i];
    const ActionSet* cached_set = nullptr;
    Eigen::VectorXd scores;
    int index = 0;
    for (int t = explore_len + 1; t <= horizon; ++t) {
      const ActionSet& set = instance.action_set(agent, t);
      if (&set != cached_set) {
        scores = set.actions * theta_hat;
        index = argmax_lowest_index(scores);
        cached_set = &set;
      }
      const double reward =
          sample_reward(instance, set.actions.row(index).transpose(), reward_rngs[i]);
      result.trajectories[i].entries.push_back(TrajectoryEntry{t, index, reward});
    }
  }

  result.metc = MetcDiagnostics{theta_hat, explore_len};
  finalize_curves(instance, result);
  return result;
}

CoalitionRunResult run_linucb_m(std::uint64_t coalition_mask, const ProblemInstance& instance,
                                const LinUcbParams& params, const RunKey& key) {
  if (params.ridge <= 0.0) throw InvalidConfigError("run_linucb_m: ridge must be positive");
  CoalitionRunResult result;
  result.members = checked_members(coalition_mask, instance, "run_linucb_m");
  const int d = instance.dimension();
  const int horizon = instance.horizon();

  std::vector<RngStream> reward_rngs;
  for (int agent : result.members)
    reward_rngs.push_back(key.stream(static_cast<std::uint32_t>(agent), StreamPurpose::kRewardNoise));

  result.trajectories.resize(result.members.size());
  for (std::size_t i = 0; i < result.members.size(); ++i) {
    result.trajectories[i].agent = result.members[i];
    result.trajectories[i].entries.reserve(static_cast<std::size_t>(horizon));
  }

  PooledDataset pool(d);
  const Eigen::MatrixXd ridge_eye = params.ridge * Eigen::MatrixXd::Identity(d, d);
  for (int t = 1; t <= horizon; ++t) {
    // All members decide simultaneously from the pool up to t-1.
    const Eigen::LLT<Eigen::MatrixXd> llt(pool.gram() + ridge_eye);
    const Eigen::VectorXd theta = llt.solve(pool.moment());
    const double beta = linucb_beta(params, d, pool.count());
    std::vector<PooledSample> step_pairs;
    step_pairs.reserve(result.members.size());
    for (std::size_t i = 0; i < result.members.size(); ++i) {
      const int agent = result.members[i];
      const ActionSet& set = instance.action_set(agent, t);
      const Eigen::MatrixXd solved = llt.solve(set.actions.transpose());  // d x K
      int best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < set.size(); ++j) {
        const double width = std::sqrt(set.actions.row(j).dot(solved.col(j)));
        const double score = set.actions.row(j).dot(theta) + beta * width;
        if (score > best_score) {
          best = j;
          best_score = score;
        }
      }
      const Eigen::VectorXd x = set.actions.row(best).transpose();
      const double reward = sample_reward(instance, x, reward_rngs[i]);
      result.trajectories[i].entries.push_back(TrajectoryEntry{t, best, reward});
      step_pairs.push_back(PooledSample{x, reward});
    }
    pool.append_others(std::move(step_pairs));
  }

  finalize_curves(instance, result);
  return result;
}

CoalitionRunResult run_greedy(std::uint64_t coalition_mask, const ProblemInstance& instance,
                              const GreedyOptions& options, const RunKey& key) {
  if (options.ridge <= 0.0) throw InvalidConfigError("run_greedy: ridge must be positive");
  if (options.warmup < 0) throw InvalidConfigError("run_greedy: warmup must be non-negative");
  CoalitionRunResult result;
  result.members = checked_members(coalition_mask, instance, "run_greedy");
  const int d = instance.dimension();
  const int horizon = instance.horizon();

  std::vector<RngStream> reward_rngs;
  for (int agent : result.members)
    reward_rngs.push_back(key.stream(static_cast<std::uint32_t>(agent), StreamPurpose::kRewardNoise));

  result.trajectories.resize(result.members.size());
  for (std::size_t i = 0; i < result.members.size(); ++i) {
    result.trajectories[i].agent = result.members[i];
    result.trajectories[i].entries.reserve(static_cast<std::size_t>(horizon));
  }

  PooledDataset pool(d);
  const Eigen::MatrixXd ridge_eye = options.ridge * Eigen::MatrixXd::Identity(d, d);
  for (int t = 1; t <= horizon; ++t) {
    Eigen::VectorXd theta;
    if (options.theta_override.has_value()) {
      theta = *options.theta_override;
    } else {
      theta = (pool.gram() + ridge_eye).llt().solve(pool.moment());
    }
    std::vector<PooledSample> step_pairs;
    step_pairs.reserve(result.members.size());
    for (std::size_t i = 0; i < result.members.size(); ++i) {
      const int agent = result.members[i];
      const ActionSet& set = instance.action_set(agent, t);
      int index;
      if (t <= options.warmup) {
        index = (t - 1) % set.size();
      } else {
        index = argmax_lowest_index(set.actions * theta);
      }
      const Eigen::VectorXd x = set.actions.row(index).transpose();
      const double reward = sample_reward(instance, x, reward_rngs[i]);
      result.trajectories[i].entries.push_back(TrajectoryEntry{t, index, reward});
      step_pairs.push_back(PooledSample{x, reward});
    }
    pool.append_others(std::move(step_pairs));
  }

  finalize_curves(instance, result);
  return result;
}

}  // namespace banditgame
