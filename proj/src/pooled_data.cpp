#include "banditgame/pooled_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "banditgame/errors.hpp"

namespace banditgame {

namespace {

// Lexicographic order on (action coordinates, reward); any total order
// works, it only has to be independent of agent attribution.
bool sample_less(const PooledSample& a, const PooledSample& b) {
  const auto n = std::min(a.action.size(), b.action.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a.action[i] != b.action[i]) return a.action[i] < b.action[i];
  }
  if (a.action.size() != b.action.size()) return a.action.size() < b.action.size();
  return a.reward < b.reward;
}

}  // namespace

PooledDataset::PooledDataset(int dim) {
  if (dim <= 0) throw InvalidInputError("PooledDataset: dimension must be positive");
  gram_ = Eigen::MatrixXd::Zero(dim, dim);
  moment_ = Eigen::VectorXd::Zero(dim);
}

void PooledDataset::append_own(const Eigen::VectorXd& action, double reward) {
  if (action.size() != gram_.rows())
    throw InvalidInputError("PooledDataset::append_own: action length mismatch");
  gram_.selfadjointView<Eigen::Lower>().rankUpdate(action);
  gram_.triangularView<Eigen::StrictlyUpper>() = gram_.transpose();
  moment_ += action * reward;
  own_.push_back(PooledSample{action, reward});
  ++own_count_;
}

void PooledDataset::append_others(std::vector<PooledSample> step_pairs) {
  for (const PooledSample& s : step_pairs) {
    if (s.action.size() != gram_.rows())
      throw InvalidInputError("PooledDataset::append_others: action length mismatch");
  }
  std::sort(step_pairs.begin(), step_pairs.end(), sample_less);
  for (const PooledSample& s : step_pairs) {
    gram_.selfadjointView<Eigen::Lower>().rankUpdate(s.action);
    gram_.triangularView<Eigen::StrictlyUpper>() = gram_.transpose();
    moment_ += s.action * s.reward;
    ++others_count_;
  }
  others_.push_back(std::move(step_pairs));
}

OlsEstimate pooled_ols(const PooledDataset& samples, double ridge) {
  if (ridge < 0.0) throw InvalidInputError("pooled_ols: ridge must be non-negative");
  if (samples.count() == 0 && ridge == 0.0)
    throw InvalidInputError("pooled_ols: need at least one sample or a positive ridge");
  const int d = samples.dim();
  OlsEstimate est;
  est.ridge = ridge;
  est.gram = samples.gram() + ridge * Eigen::MatrixXd::Identity(d, d);
  est.moment = samples.moment();
  if (ridge > 0.0) {
    est.theta_hat = est.gram.llt().solve(est.moment);
    return est;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(est.gram);
  if (!lu.isInvertible())
    throw SingularDesignError("pooled_ols: singular design with ridge 0");
  est.theta_hat = lu.solve(est.moment);
  return est;
}

int detmax_action_index(const ActionSet& set, const Eigen::Ref<const Eigen::MatrixXd>& gram) {
  if (set.size() < 1) throw InvalidInputError("detmax_action: empty action set");
  if (gram.rows() != set.dim() || gram.cols() != set.dim())
    throw InvalidInputError("detmax_action: gram shape does not match action dimension");
  const Eigen::MatrixXd base =
      Eigen::MatrixXd::Identity(set.dim(), set.dim()) + gram;
  const Eigen::LLT<Eigen::MatrixXd> llt(base);
  if (llt.info() != Eigen::Success)
    throw InvalidInputError("detmax_action: gram must be positive semidefinite");
  // det(base + x x^T) = det(base) (1 + x^T base^-1 x); det(base) is a
  // shared factor, so the quadratic form alone decides the argmax.
  int best = 0;
  double best_gain = -1.0;
  for (int i = 0; i < set.size(); ++i) {
    const Eigen::VectorXd x = set.actions.row(i).transpose();
    const double gain = x.dot(llt.solve(x));
    if (gain > best_gain) {
      best = i;
      best_gain = gain;
    }
  }
  return best;
}

Eigen::VectorXd detmax_action(const ActionSet& set,
                              const Eigen::Ref<const Eigen::MatrixXd>& gram) {
  return set.actions.row(detmax_action_index(set, gram)).transpose();
}

double linucb_beta(const LinUcbParams& params, int dim, long num_samples) {
  if (params.ridge <= 0.0) throw InvalidInputError("linucb_beta: ridge must be positive");
  if (params.delta <= 0.0 || params.delta >= 1.0)
    throw InvalidInputError("linucb_beta: delta must lie in (0, 1)");
  const double n = static_cast<double>(num_samples);
  const double d = static_cast<double>(dim);
  const double l2 = params.action_bound * params.action_bound;
  const double log_det_bound = d * std::log(1.0 + n * l2 / (params.ridge * d));
  return params.noise_std * std::sqrt(2.0 * std::log(1.0 / params.delta) + log_det_bound) +
         std::sqrt(params.ridge) * params.theta_bound;
}

int linucb_action_index(const PooledDataset& pool, const LinUcbParams& params,
                        const ActionSet& set) {
  if (set.size() < 1) throw InvalidInputError("linucb_action_index: empty action set");
  const int d = pool.dim();
  if (set.dim() != d)
    throw InvalidInputError("linucb_action_index: action dimension mismatch");
  const Eigen::MatrixXd v =
      pool.gram() + params.ridge * Eigen::MatrixXd::Identity(d, d);
  const Eigen::LLT<Eigen::MatrixXd> llt(v);
  const Eigen::VectorXd theta = llt.solve(pool.moment());
  const double beta = linucb_beta(params, d, pool.count());
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < set.size(); ++i) {
    const Eigen::VectorXd x = set.actions.row(i).transpose();
    const double width = std::sqrt(x.dot(llt.solve(x)));
    const double score = theta.dot(x) + beta * width;
    if (score > best_score) {
      best = i;
      best_score = score;
    }
  }
  return best;
}

int greedy_action_index(const PooledDataset& pool, double ridge, const ActionSet& set) {
  if (set.size() < 1) throw InvalidInputError("greedy_action_index: empty action set");
  if (set.dim() != pool.dim())
    throw InvalidInputError("greedy_action_index: action dimension mismatch");
  const OlsEstimate est = pooled_ols(pool, ridge);
  return argmax_lowest_index(set.actions * est.theta_hat);
}

}  // namespace banditgame
