#pragma once

#include <memory>
#include <string>
#include <vector>

#include "banditgame/bandit_env.hpp"
#include "banditgame/rng.hpp"

namespace banditgame {

// Black-box single-agent decision maker over a fixed finite action
// set.  Implementations hold only statistics derived from the history
// fed through observe(); resetting and replaying the same history with
// the same policy stream reproduces the same decisions.
class SinglePolicy {
 public:
  virtual ~SinglePolicy() = default;

  virtual std::string name() const = 0;

  // Start a fresh run on the given action set.
  virtual void reset(const ActionSet& actions) = 0;

  // Next action index to play.  May consume the policy stream.
  virtual int choose(RngStream& rng) = 0;

  // Record the observed reward for a previously chosen action.
  virtual void observe(int action_index, double reward) = 0;

  // Fresh instance with the same hyperparameters and no history.
  virtual std::unique_ptr<SinglePolicy> clone() const = 0;
};

// Index policy: after one pull of every arm (in index order), plays
// argmax of empirical mean + width_scale * sqrt(2 ln(step) / pulls).
// width_scale is the assumed reward-noise scale; with width_scale 0 the
// policy greedily follows the empirical means after the initial sweep.
// Ties resolve to the lowest index.
class UcbPolicy : public SinglePolicy {
 public:
  explicit UcbPolicy(double width_scale = 1.0);

  std::string name() const override;
  void reset(const ActionSet& actions) override;
  int choose(RngStream& rng) override;
  void observe(int action_index, double reward) override;
  std::unique_ptr<SinglePolicy> clone() const override;

 private:
  double width_scale_;
  std::vector<long> pulls_;
  std::vector<double> sums_;
  long step_ = 1;  // 1-based decision count
};

// Round-robin exploration of every arm `pulls_per_arm` times, then
// commit to the best empirical mean.
class ExploreThenCommitPolicy : public SinglePolicy {
 public:
  explicit ExploreThenCommitPolicy(int pulls_per_arm);

  std::string name() const override;
  void reset(const ActionSet& actions) override;
  int choose(RngStream& rng) override;
  void observe(int action_index, double reward) override;
  std::unique_ptr<SinglePolicy> clone() const override;

 private:
  int pulls_per_arm_;
  std::vector<long> pulls_;
  std::vector<double> sums_;
  long step_ = 1;
  int committed_ = -1;
};

// With probability epsilon plays a uniform arm, otherwise the best
// empirical mean (untried arms first, in index order).
class EpsGreedyPolicy : public SinglePolicy {
 public:
  explicit EpsGreedyPolicy(double epsilon);

  std::string name() const override;
  void reset(const ActionSet& actions) override;
  int choose(RngStream& rng) override;
  void observe(int action_index, double reward) override;
  std::unique_ptr<SinglePolicy> clone() const override;

 private:
  double epsilon_;
  std::vector<long> pulls_;
  std::vector<double> sums_;
};

}  // namespace banditgame
