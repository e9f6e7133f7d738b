#pragma once

#include <Eigen/Dense>
#include <vector>

#include "banditgame/rng.hpp"

namespace banditgame {

// Finite ordered set of actions.  Rows of `actions` are d-dimensional
// action vectors; the row order is stable and is the tie-break order
// everywhere an argmax is taken.
struct ActionSet {
  Eigen::MatrixXd actions;  // K x d

  int size() const { return static_cast<int>(actions.rows()); }
  int dim() const { return static_cast<int>(actions.cols()); }
  Eigen::MatrixXd::ConstRowXpr action(int i) const { return actions.row(i); }
};

// How action sets vary across agents and time.
enum class ActionLayout {
  kShared,           // one set for all agents and all time-steps
  kPerAgent,         // one set per agent, constant over time
  kPerAgentPerTime,  // a set for every (agent, time-step) pair
};

// A multi-agent stochastic linear bandit instance: an unknown linear
// parameter plus the profile of action sets offered to each agent at
// each time-step.  Rewards are <theta_star, x> plus Gaussian noise of
// standard deviation noise_std.  Immutable after construction and
// safe to share across concurrent runs.
class ProblemInstance {
 public:
  // Default-constructed instances are empty placeholders; build real
  // ones through the factories below.
  ProblemInstance() = default;

  static ProblemInstance shared(Eigen::VectorXd theta_star, ActionSet set, int num_agents,
                                int horizon, double noise_std);
  static ProblemInstance per_agent(Eigen::VectorXd theta_star, std::vector<ActionSet> sets,
                                   int horizon, double noise_std);
  // sets[agent][t - 1] is the set offered to `agent` at time-step t.
  static ProblemInstance per_agent_per_time(Eigen::VectorXd theta_star,
                                            std::vector<std::vector<ActionSet>> sets,
                                            double noise_std);

  int dimension() const { return static_cast<int>(theta_star_.size()); }
  int num_agents() const { return num_agents_; }
  int horizon() const { return horizon_; }
  double noise_std() const { return noise_std_; }
  const Eigen::VectorXd& theta_star() const { return theta_star_; }
  ActionLayout layout() const { return layout_; }

  // True when every (agent, t) pair sees the identical action set.
  bool fixed_actions() const { return layout_ == ActionLayout::kShared; }

  // Set offered to `agent` at time-step t (1-based).  For layouts that
  // do not vary over time, t past the nominal horizon is allowed; the
  // fixed set is simply reused.
  const ActionSet& action_set(int agent, int t) const;

  // Index of the action maximizing <theta_star, x> in X_{agent,t};
  // ties resolve to the lowest index.
  int best_action_index(int agent, int t) const;

 private:
  Eigen::VectorXd theta_star_;
  int num_agents_ = 0;
  int horizon_ = 0;
  double noise_std_ = 0.0;
  ActionLayout layout_ = ActionLayout::kShared;
  std::vector<ActionSet> agent_sets_;                // kShared: 1, kPerAgent: M
  std::vector<std::vector<ActionSet>> time_sets_;    // kPerAgentPerTime
};

struct TrajectoryEntry {
  int t = 0;             // 1-based time-step
  int action_index = 0;  // index into the agent's set at t
  double reward = 0.0;
};

// One agent's played sequence plus its realized cumulative
// pseudo-regret curve (filled by the runners).
struct Trajectory {
  int agent = 0;
  std::vector<TrajectoryEntry> entries;
  std::vector<double> regret_curve;  // cumulative; same length as entries
};

// Noiseless expected reward <theta_star, action>.
double expected_reward(const ProblemInstance& instance,
                       const Eigen::Ref<const Eigen::VectorXd>& action);

// Expected reward plus one Gaussian draw of scale noise_std.  Consumes
// exactly one gaussian() draw even when noise_std == 0 so that streams
// stay aligned across configurations.
double sample_reward(const ProblemInstance& instance,
                     const Eigen::Ref<const Eigen::VectorXd>& action, RngStream& rng);

// Cumulative per-step optimality gaps <theta*, x*_t> - <theta*, x_t>.
// The trajectory must cover t = 1..len contiguously; an action index
// outside the agent's set at t is a protocol violation.
std::vector<double> pseudo_regret_curve(const ProblemInstance& instance,
                                        const Trajectory& trajectory);

// Lowest index attaining the strict maximum of `scores`.
int argmax_lowest_index(const Eigen::Ref<const Eigen::VectorXd>& scores);

}  // namespace banditgame
