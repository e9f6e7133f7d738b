#include "banditgame/policies.hpp"

#include <cmath>
#include <limits>

#include "banditgame/errors.hpp"

namespace banditgame {

namespace {

int best_mean_index(const std::vector<long>& pulls, const std::vector<double>& sums) {
  int best = -1;
  double best_mean = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pulls.size(); ++i) {
    const double mean = pulls[i] > 0 ? sums[i] / static_cast<double>(pulls[i]) : 0.0;
    if (best < 0 || mean > best_mean) {
      best = static_cast<int>(i);
      best_mean = mean;
    }
  }
  return best;
}

void record(std::vector<long>& pulls, std::vector<double>& sums, int index, double reward) {
  if (index < 0 || index >= static_cast<int>(pulls.size()))
    throw InvalidInputError("policy observe: action index out of range");
  ++pulls[static_cast<std::size_t>(index)];
  sums[static_cast<std::size_t>(index)] += reward;
}

}  // namespace

UcbPolicy::UcbPolicy(double width_scale) : width_scale_(width_scale) {
  if (width_scale < 0.0) throw InvalidInputError("UcbPolicy: width_scale must be non-negative");
}

std::string UcbPolicy::name() const { return "ucb"; }

void UcbPolicy::reset(const ActionSet& actions) {
  pulls_.assign(static_cast<std::size_t>(actions.size()), 0);
  sums_.assign(static_cast<std::size_t>(actions.size()), 0.0);
  step_ = 1;
}

int UcbPolicy::choose(RngStream&) {
  for (std::size_t i = 0; i < pulls_.size(); ++i) {
    if (pulls_[i] == 0) return static_cast<int>(i);
  }
  int best = 0;
  double best_index = -std::numeric_limits<double>::infinity();
  const double log_term = 2.0 * std::log(static_cast<double>(step_));
  for (std::size_t i = 0; i < pulls_.size(); ++i) {
    const double mean = sums_[i] / static_cast<double>(pulls_[i]);
    const double index = mean + width_scale_ * std::sqrt(log_term / static_cast<double>(pulls_[i]));
    if (index > best_index) {
      best = static_cast<int>(i);
      best_index = index;
    }
  }
  return best;
}

void UcbPolicy::observe(int action_index, double reward) {
  record(pulls_, sums_, action_index, reward);
  ++step_;
}

std::unique_ptr<SinglePolicy> UcbPolicy::clone() const {
  return std::make_unique<UcbPolicy>(width_scale_);
}

ExploreThenCommitPolicy::ExploreThenCommitPolicy(int pulls_per_arm)
    : pulls_per_arm_(pulls_per_arm) {
  if (pulls_per_arm < 1)
    throw InvalidInputError("ExploreThenCommitPolicy: pulls_per_arm must be >= 1");
}

std::string ExploreThenCommitPolicy::name() const { return "etc"; }

void ExploreThenCommitPolicy::reset(const ActionSet& actions) {
  pulls_.assign(static_cast<std::size_t>(actions.size()), 0);
  sums_.assign(static_cast<std::size_t>(actions.size()), 0.0);
  step_ = 1;
  committed_ = -1;
}

int ExploreThenCommitPolicy::choose(RngStream&) {
  const long explore_steps = static_cast<long>(pulls_per_arm_) * static_cast<long>(pulls_.size());
  if (step_ <= explore_steps)
    return static_cast<int>((step_ - 1) % static_cast<long>(pulls_.size()));
  if (committed_ < 0) committed_ = best_mean_index(pulls_, sums_);
  return committed_;
}

void ExploreThenCommitPolicy::observe(int action_index, double reward) {
  record(pulls_, sums_, action_index, reward);
  ++step_;
}

std::unique_ptr<SinglePolicy> ExploreThenCommitPolicy::clone() const {
  return std::make_unique<ExploreThenCommitPolicy>(pulls_per_arm_);
}

EpsGreedyPolicy::EpsGreedyPolicy(double epsilon) : epsilon_(epsilon) {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw InvalidInputError("EpsGreedyPolicy: epsilon must lie in [0, 1]");
}

std::string EpsGreedyPolicy::name() const { return "eps-greedy"; }

void EpsGreedyPolicy::reset(const ActionSet& actions) {
  pulls_.assign(static_cast<std::size_t>(actions.size()), 0);
  sums_.assign(static_cast<std::size_t>(actions.size()), 0.0);
}

int EpsGreedyPolicy::choose(RngStream& rng) {
  // The uniform draw happens on every step so the stream advances at a
  // fixed rate regardless of the branch taken.
  const double coin = rng.uniform01();
  const std::uint64_t uniform_arm = rng.below(pulls_.size());
  if (coin < epsilon_) return static_cast<int>(uniform_arm);
  for (std::size_t i = 0; i < pulls_.size(); ++i) {
    if (pulls_[i] == 0) return static_cast<int>(i);
  }
  return best_mean_index(pulls_, sums_);
}

void EpsGreedyPolicy::observe(int action_index, double reward) {
  record(pulls_, sums_, action_index, reward);
}

std::unique_ptr<SinglePolicy> EpsGreedyPolicy::clone() const {
  return std::make_unique<EpsGreedyPolicy>(epsilon_);
}

}  // namespace banditgame
