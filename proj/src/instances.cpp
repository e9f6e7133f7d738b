#include "banditgame/instances.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "banditgame/errors.hpp"

namespace banditgame {

namespace {

constexpr int kSyntheticDim = 25;
constexpr int kBlock = 5;

// theta* coordinate pattern: 0.7, 0.6, 0.5, 0.4, 0.3 repeating with
// the coordinate index (1-based) mod 5.
Eigen::VectorXd synthetic_theta() {
  Eigen::VectorXd theta(kSyntheticDim);
  const double by_residue[kBlock] = {0.3, 0.7, 0.6, 0.5, 0.4};  // residue (i mod 5) -> value
  for (int i = 1; i <= kSyntheticDim; ++i) theta[i - 1] = by_residue[i % kBlock];
  return theta;
}

// Rows of the identity: action j is the standard basis vector e_j.
ActionSet basis_subset(const std::vector<int>& indices) {
  ActionSet set;
  set.actions = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(indices.size()), kSyntheticDim);
  for (std::size_t r = 0; r < indices.size(); ++r) set.actions(static_cast<Eigen::Index>(r), indices[r]) = 1.0;
  return set;
}

// Block b (0-based) holds 0-based action indices 5b..5b+4.
std::vector<int> block_indices(int b) {
  std::vector<int> out;
  for (int i = 0; i < kBlock; ++i) out.push_back(b * kBlock + i);
  return out;
}

}  // namespace

ProblemInstance make_cyclic_synthetic(const SyntheticSpec& spec) {
  if (spec.family != SyntheticFamily::kCyclicSymmetric)
    throw InvalidConfigError("make_cyclic_synthetic: spec family mismatch");
  std::vector<ActionSet> sets;
  for (int a = 0; a < 5; ++a) {
    std::vector<int> indices = block_indices(a);
    const std::vector<int> next = block_indices((a + 1) % 5);
    indices.insert(indices.end(), next.begin(), next.end());
    std::sort(indices.begin(), indices.end());
    sets.push_back(basis_subset(indices));
  }
  return ProblemInstance::per_agent(synthetic_theta(), std::move(sets), spec.horizon,
                                    spec.noise_std);
}

ProblemInstance make_asymmetric_synthetic(const SyntheticSpec& spec) {
  if (spec.family != SyntheticFamily::kAsymmetricHub)
    throw InvalidConfigError("make_asymmetric_synthetic: spec family mismatch");
  std::vector<ActionSet> sets;
  // Hub agent 0: the first action of every block (1, 7, 13, 19, 25 in
  // 1-based numbering).
  sets.push_back(basis_subset({0, 6, 12, 18, 24}));
  for (int b = 0; b < 5; ++b) sets.push_back(basis_subset(block_indices(b)));
  return ProblemInstance::per_agent(synthetic_theta(), std::move(sets), spec.horizon,
                                    spec.noise_std);
}

Eigen::MatrixXd embed_svd(const RatingMatrix& matrix, int d) {
  if (matrix.num_users < 1 || matrix.num_movies < 1)
    throw InvalidInputError("embed_svd: empty rating matrix");
  if (d < 1 || d > std::min(matrix.num_users, matrix.num_movies))
    throw InvalidConfigError("embed_svd: d must lie in [1, min(num_users, num_movies)]");

  // Column means over observed entries (global mean for unrated
  // movies); imputing the mean and centering zeroes the missing cells.
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(matrix.num_movies);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(matrix.num_movies);
  double global_sum = 0.0;
  for (const RatingRecord& r : matrix.ratings) {
    if (r.user < 0 || r.user >= matrix.num_users || r.movie < 0 || r.movie >= matrix.num_movies)
      throw InvalidInputError("embed_svd: rating index out of range");
    sums[r.movie] += r.rating;
    counts[r.movie] += 1.0;
    global_sum += r.rating;
  }
  const double global_mean =
      matrix.ratings.empty() ? 0.0 : global_sum / static_cast<double>(matrix.ratings.size());
  Eigen::VectorXd means(matrix.num_movies);
  for (int j = 0; j < matrix.num_movies; ++j)
    means[j] = counts[j] > 0.0 ? sums[j] / counts[j] : global_mean;

  Eigen::MatrixXd centered = Eigen::MatrixXd::Zero(matrix.num_users, matrix.num_movies);
  for (const RatingRecord& r : matrix.ratings) centered(r.user, r.movie) = r.rating - means[r.movie];

  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::MatrixXd v = svd.matrixV().leftCols(d);
  const Eigen::VectorXd sigma = svd.singularValues().head(d);

  Eigen::MatrixXd embeddings = v * sigma.asDiagonal();
  // Sign convention: per component, the largest-magnitude coefficient
  // (first on ties) is positive.
  for (int c = 0; c < d; ++c) {
    int arg = 0;
    for (int r = 1; r < embeddings.rows(); ++r) {
      if (std::abs(embeddings(r, c)) > std::abs(embeddings(arg, c))) arg = r;
    }
    if (embeddings(arg, c) < 0.0) embeddings.col(c) = -embeddings.col(c);
  }
  return embeddings;
}

Eigen::VectorXd fit_theta_star(const Eigen::MatrixXd& embeddings,
                               const std::vector<RatingRecord>& records, double ridge) {
  if (ridge < 0.0) throw InvalidInputError("fit_theta_star: ridge must be non-negative");
  if (records.empty() && ridge == 0.0)
    throw InvalidInputError("fit_theta_star: no rating records");
  const Eigen::Index d = embeddings.cols();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd moment = Eigen::VectorXd::Zero(d);
  for (const RatingRecord& r : records) {
    if (r.movie < 0 || r.movie >= embeddings.rows())
      throw InvalidInputError("fit_theta_star: embedding index out of range");
    const Eigen::VectorXd x = embeddings.row(r.movie).transpose();
    gram.selfadjointView<Eigen::Lower>().rankUpdate(x);
    moment += x * r.rating;
  }
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
  if (ridge > 0.0) {
    gram += ridge * Eigen::MatrixXd::Identity(d, d);
    return gram.llt().solve(moment);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (!lu.isInvertible())
    throw SingularDesignError("fit_theta_star: rank-deficient design with ridge 0");
  return lu.solve(moment);
}

}  // namespace banditgame
