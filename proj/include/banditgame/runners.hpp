#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "banditgame/bandit_env.hpp"
#include "banditgame/policies.hpp"
#include "banditgame/pooled_data.hpp"
#include "banditgame/rng.hpp"

namespace banditgame {

// Final virtual-clock position and leftover buffered rewards of a
// shared-buffer run.  Every run satisfies
// m*T - m*K <= tau_bar <= m*T and residue = m*T - tau_bar.
struct MulDiagnostics {
  long tau_bar = 0;
  long buffer_residue = 0;
};

struct MetcDiagnostics {
  Eigen::VectorXd theta_hat;
  int explore_len = 0;
};

// Output of one coalition run: one trajectory (with its realized
// pseudo-regret curve) per member, in ascending agent order.
struct CoalitionRunResult {
  std::vector<int> members;
  std::vector<Trajectory> trajectories;
  std::optional<MulDiagnostics> mul;
  std::optional<MetcDiagnostics> metc;

  // Final cumulative pseudo-regret of one member / of all members.
  double agent_regret(int agent) const;
  double total_regret() const;
};

// Ascending agent ids of the set bits.
std::vector<int> mask_members(std::uint64_t mask);

// Runs a single-agent policy on one agent's bandit for `horizon`
// steps.  The agent's action set must not vary over time; on shared
// fixed-action instances the horizon may exceed the instance horizon
// (the shared set is reused), which is what coalition-vs-single
// comparisons at horizon m*T need.
Trajectory run_single(const SinglePolicy& policy, const ProblemInstance& instance, int agent,
                      int horizon, const RunKey& key);

// Meta-algorithm driving a whole coalition with one single-agent
// policy over a shared reward buffer.  Requires a fixed shared action
// set.  Per-action buffers are refilled only when the policy requests
// an action whose buffer is empty; at that point every member plays
// that same action once and all observed rewards are queued.  Rewards
// are consumed in FIFO order (buffered rewards for one action are
// exchangeable, so the removal order does not affect distributions,
// and FIFO keeps replays exact).
CoalitionRunResult run_mul(const SinglePolicy& sin, std::uint64_t coalition_mask,
                           const ProblemInstance& instance, const RunKey& key);

// Explore-then-commit for a coalition: `explore_len` steps of per-agent
// determinant-maximizing exploration (independent of all rewards and of
// the other agents), one pooled least-squares estimate, then greedy
// commitment to that estimate.  ridge == 0 falls back to a 1e-8 ridge
// if the pooled design is singular.
CoalitionRunResult run_metc(std::uint64_t coalition_mask, const ProblemInstance& instance,
                            int explore_len, double ridge, const RunKey& key);

// Every member runs optimistic linear estimation (LinUCB) on the
// coalition-wide anonymized pool of past samples.
CoalitionRunResult run_linucb_m(std::uint64_t coalition_mask, const ProblemInstance& instance,
                                const LinUcbParams& params, const RunKey& key);

struct GreedyOptions {
  double ridge = 1.0;
  int warmup = 0;  // initial per-agent round-robin steps before the myopic rule
  // Test hook: when set, the estimate is pinned to this vector for the
  // whole run instead of being refit from the pool.
  std::optional<Eigen::VectorXd> theta_override;
};

// Every member plays the myopic argmax of the pooled least-squares
// estimate (zero vector before any data, so the first step falls to
// the lowest action index).
CoalitionRunResult run_greedy(std::uint64_t coalition_mask, const ProblemInstance& instance,
                              const GreedyOptions& options, const RunKey& key);

}  // namespace banditgame
