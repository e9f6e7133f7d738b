#include "banditgame/bandit_env.hpp"

#include <string>

#include "banditgame/errors.hpp"

namespace banditgame {

namespace {

void validate_common(const Eigen::VectorXd& theta, int num_agents, int horizon, double noise_std) {
  if (theta.size() <= 0) throw InvalidInputError("ProblemInstance: dimension must be positive");
  if (num_agents <= 0) throw InvalidInputError("ProblemInstance: num_agents must be positive");
  if (horizon <= 0) throw InvalidInputError("ProblemInstance: horizon must be positive");
  if (noise_std < 0.0) throw InvalidInputError("ProblemInstance: noise_std must be non-negative");
}

void validate_set(const ActionSet& set, int dim, const std::string& where) {
  if (set.size() < 1) throw InvalidInputError(where + ": action set must hold at least one action");
  if (set.dim() != dim)
    throw InvalidInputError(where + ": action length " + std::to_string(set.dim()) +
                            " does not match dimension " + std::to_string(dim));
}

}  // namespace

ProblemInstance ProblemInstance::shared(Eigen::VectorXd theta_star, ActionSet set, int num_agents,
                                        int horizon, double noise_std) {
  validate_common(theta_star, num_agents, horizon, noise_std);
  validate_set(set, static_cast<int>(theta_star.size()), "ProblemInstance::shared");
  ProblemInstance inst;
  inst.theta_star_ = std::move(theta_star);
  inst.num_agents_ = num_agents;
  inst.horizon_ = horizon;
  inst.noise_std_ = noise_std;
  inst.layout_ = ActionLayout::kShared;
  inst.agent_sets_.push_back(std::move(set));
  return inst;
}

ProblemInstance ProblemInstance::per_agent(Eigen::VectorXd theta_star, std::vector<ActionSet> sets,
                                           int horizon, double noise_std) {
  validate_common(theta_star, static_cast<int>(sets.size()), horizon, noise_std);
  for (const ActionSet& s : sets)
    validate_set(s, static_cast<int>(theta_star.size()), "ProblemInstance::per_agent");
  ProblemInstance inst;
  inst.theta_star_ = std::move(theta_star);
  inst.num_agents_ = static_cast<int>(sets.size());
  inst.horizon_ = horizon;
  inst.noise_std_ = noise_std;
  inst.layout_ = ActionLayout::kPerAgent;
  inst.agent_sets_ = std::move(sets);
  return inst;
}

ProblemInstance ProblemInstance::per_agent_per_time(Eigen::VectorXd theta_star,
                                                    std::vector<std::vector<ActionSet>> sets,
                                                    double noise_std) {
  if (sets.empty() || sets.front().empty())
    throw InvalidInputError("ProblemInstance::per_agent_per_time: empty action profile");
  const int horizon = static_cast<int>(sets.front().size());
  validate_common(theta_star, static_cast<int>(sets.size()), horizon, noise_std);
  for (const auto& per_time : sets) {
    if (static_cast<int>(per_time.size()) != horizon)
      throw InvalidInputError(
          "ProblemInstance::per_agent_per_time: action profile must cover every time-step for "
          "every agent");
    for (const ActionSet& s : per_time)
      validate_set(s, static_cast<int>(theta_star.size()), "ProblemInstance::per_agent_per_time");
  }
  ProblemInstance inst;
  inst.theta_star_ = std::move(theta_star);
  inst.num_agents_ = static_cast<int>(sets.size());
  inst.horizon_ = horizon;
  inst.noise_std_ = noise_std;
  inst.layout_ = ActionLayout::kPerAgentPerTime;
  inst.time_sets_ = std::move(sets);
  return inst;
}

const ActionSet& ProblemInstance::action_set(int agent, int t) const {
  if (agent < 0 || agent >= num_agents_)
    throw InvalidInputError("ProblemInstance::action_set: agent id out of range");
  if (t < 1) throw InvalidInputError("ProblemInstance::action_set: time-step must be >= 1");
  switch (layout_) {
    case ActionLayout::kShared:
      return agent_sets_.front();
    case ActionLayout::kPerAgent:
      return agent_sets_[static_cast<std::size_t>(agent)];
    case ActionLayout::kPerAgentPerTime:
      if (t > horizon_)
        throw InvalidInputError("ProblemInstance::action_set: time-step past horizon on a "
                                "time-varying instance");
      return time_sets_[static_cast<std::size_t>(agent)][static_cast<std::size_t>(t - 1)];
  }
  throw InvalidInputError("ProblemInstance::action_set: unknown layout");
}

int ProblemInstance::best_action_index(int agent, int t) const {
  const ActionSet& set = action_set(agent, t);
  return argmax_lowest_index(set.actions * theta_star_);
}

double expected_reward(const ProblemInstance& instance,
                       const Eigen::Ref<const Eigen::VectorXd>& action) {
  if (action.size() != instance.dimension())
    throw InvalidInputError("expected_reward: action length does not match instance dimension");
  return instance.theta_star().dot(action);
}

double sample_reward(const ProblemInstance& instance,
                     const Eigen::Ref<const Eigen::VectorXd>& action, RngStream& rng) {
  const double mean = expected_reward(instance, action);
  return mean + instance.noise_std() * rng.gaussian();
}

std::vector<double> pseudo_regret_curve(const ProblemInstance& instance,
                                        const Trajectory& trajectory) {
  if (trajectory.agent < 0 || trajectory.agent >= instance.num_agents())
    throw InvalidInputError("pseudo_regret_curve: agent id out of range");
  std::vector<double> curve;
  curve.reserve(trajectory.entries.size());
  double cumulative = 0.0;
  int expected_t = 1;
  const ActionSet* cached_set = nullptr;  // sets are stable for fixed layouts
  Eigen::VectorXd scores;
  int best = 0;
  for (const TrajectoryEntry& entry : trajectory.entries) {
    if (entry.t != expected_t)
      throw InvalidInputError("pseudo_regret_curve: trajectory must cover t = 1..len in order");
    const ActionSet& set = instance.action_set(trajectory.agent, entry.t);
    if (&set != cached_set) {
      scores = set.actions * instance.theta_star();
      best = argmax_lowest_index(scores);
      cached_set = &set;
    }
    if (entry.action_index < 0 || entry.action_index >= set.size())
      throw ProtocolViolationError("pseudo_regret_curve: action index " +
                                   std::to_string(entry.action_index) +
                                   " is not in the agent's action set at t = " +
                                   std::to_string(entry.t));
    cumulative += scores[best] - scores[entry.action_index];
    curve.push_back(cumulative);
    ++expected_t;
  }
  return curve;
}

int argmax_lowest_index(const Eigen::Ref<const Eigen::VectorXd>& scores) {
  if (scores.size() == 0) throw InvalidInputError("argmax_lowest_index: empty score vector");
  int best = 0;
  for (int i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

}  // namespace banditgame
