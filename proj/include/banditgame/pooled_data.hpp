#pragma once

#include <Eigen/Dense>
#include <vector>

#include "banditgame/bandit_env.hpp"

namespace banditgame {

struct PooledSample {
  Eigen::VectorXd action;
  double reward = 0.0;
};

// Shared data as one agent is allowed to see it: its own time-ordered
// action-reward sequence, plus per-time-step multisets of the
// partners' pairs with no agent identities attached.  Running sums of
// x x^T and x y are maintained so decision rules stay O(d^2) per
// sample.  Partner pairs are folded in a canonical order, so two pools
// equal as time-indexed multisets accumulate bit-identical statistics
// no matter how the pairs were attributed to agents.
class PooledDataset {
 public:
  explicit PooledDataset(int dim);

  void append_own(const Eigen::VectorXd& action, double reward);

  // All partner pairs observed in one time-step.
  void append_others(std::vector<PooledSample> step_pairs);

  int dim() const { return static_cast<int>(gram_.rows()); }
  long count() const { return own_count_ + others_count_; }
  long own_count() const { return own_count_; }
  long others_count() const { return others_count_; }

  const std::vector<PooledSample>& own() const { return own_; }
  const std::vector<std::vector<PooledSample>>& others() const { return others_; }

  // Sum of x x^T (resp. x y) over own and partner samples together.
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::VectorXd& moment() const { return moment_; }

 private:
  std::vector<PooledSample> own_;
  std::vector<std::vector<PooledSample>> others_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd moment_;
  long own_count_ = 0;
  long others_count_ = 0;
};

// Ridge-regularized least-squares estimate built from pooled samples.
struct OlsEstimate {
  Eigen::VectorXd theta_hat;
  Eigen::MatrixXd gram;    // sum x x^T + ridge * I
  Eigen::VectorXd moment;  // sum x y
  double ridge = 0.0;
};

// theta_hat = (sum x x^T + ridge I)^-1 (sum x y) over own and partner
// samples with no distinction.  ridge == 0 on a singular design raises
// SingularDesignError.
OlsEstimate pooled_ols(const PooledDataset& samples, double ridge);

// Index of the action maximizing det(I + gram + x x^T); ties resolve
// to the lowest index.  Uses det(I + V + x x^T) =
// det(I + V) (1 + x^T (I + V)^-1 x), so only the quadratic form is
// compared across actions.
int detmax_action_index(const ActionSet& set, const Eigen::Ref<const Eigen::MatrixXd>& gram);

// Vector form of the above.
Eigen::VectorXd detmax_action(const ActionSet& set, const Eigen::Ref<const Eigen::MatrixXd>& gram);

struct LinUcbParams {
  double ridge = 1.0;        // regularization lambda
  double delta = 0.1;        // confidence level
  double noise_std = 1.0;    // reward noise scale
  double theta_bound = 1.0;  // assumed bound on ||theta*||
  double action_bound = 1.0; // assumed bound on ||x||
};

// Self-normalized confidence width for `num_samples` pooled samples in
// dimension `dim`:
//   noise_std * sqrt(2 ln(1/delta) + dim ln(1 + n L^2 / (ridge dim)))
//     + sqrt(ridge) * theta_bound.
double linucb_beta(const LinUcbParams& params, int dim, long num_samples);

// One step of the optimistic linear rule: argmax over the set of
// <theta_hat, x> + beta ||x||_{V^-1} with V = pool gram + ridge I.
int linucb_action_index(const PooledDataset& pool, const LinUcbParams& params,
                        const ActionSet& set);

// One step of the myopic rule: argmax of <theta_hat, x> with theta_hat
// from pooled_ols.  An empty pool yields theta_hat = 0, so the first
// decision falls to the lowest index.
int greedy_action_index(const PooledDataset& pool, double ridge, const ActionSet& set);

}  // namespace banditgame
