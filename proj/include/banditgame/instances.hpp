#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "banditgame/bandit_env.hpp"

namespace banditgame {

enum class SyntheticFamily { kCyclicSymmetric, kAsymmetricHub };

// The standard-basis synthetic families: 25 basis actions in dimension
// 25 with a 5-periodic parameter pattern, carved into five blocks of
// five that the agents share in two layouts.
struct SyntheticSpec {
  SyntheticFamily family = SyntheticFamily::kCyclicSymmetric;
  int horizon = 512;
  double noise_std = 1.0;
};

// Five agents around a circle; each owns two adjacent blocks and
// shares one block with each neighbour.  Fully rotation-symmetric.
ProblemInstance make_cyclic_synthetic(const SyntheticSpec& spec);

// Six agents: agents 1..5 own one disjoint block each, agent 0 owns
// the first action of every block (one shared action per other agent).
ProblemInstance make_asymmetric_synthetic(const SyntheticSpec& spec);

struct RatingRecord {
  int user = 0;   // 0-based row
  int movie = 0;  // 0-based embedding index
  double rating = 0.0;
};

struct RatingMatrix {
  int num_users = 0;
  int num_movies = 0;
  std::vector<RatingRecord> ratings;
};

// Rank-d truncated SVD of the mean-imputed, column-centered rating
// matrix; returns one row per movie, right singular vectors scaled by
// their singular values.  Deterministic sign convention: the largest-
// magnitude coefficient of each component is made positive.
Eigen::MatrixXd embed_svd(const RatingMatrix& matrix, int d);

// Least-squares fit of ratings on movie embeddings, one regression row
// per rating record.  ridge == 0 on a rank-deficient design raises
// SingularDesignError.
Eigen::VectorXd fit_theta_star(const Eigen::MatrixXd& embeddings,
                               const std::vector<RatingRecord>& records, double ridge = 0.0);

enum class MovieLensAttribute { kGender, kAge, kOccupation, kGeography };

MovieLensAttribute parse_attribute(const std::string& name);
std::string attribute_name(MovieLensAttribute attribute);

struct MovieLensSpec {
  std::string ratings_path;  // tab-separated: user, item, rating, timestamp
  std::string users_path;    // pipe-separated: id|age|gender|occupation|zip
  MovieLensAttribute attribute = MovieLensAttribute::kGender;
  int embedding_dim = 20;
  int horizon = 512;
  double noise_std = 1.0;
  int max_users = 0;   // 0 = keep all; otherwise the most-rated users
  int max_movies = 0;  // 0 = keep all; otherwise the most-rated movies
  // Ratings are mapped to [0, 1] via (r - 1) / 4 before the parameter
  // fit; set false to regress on raw 1..5 ratings.
  bool rescale_ratings = true;
  double theta_ridge = 1e-8;
  // Optional externally supplied movie embeddings (header "A d", then
  // A rows of d decimals); replaces the SVD step when non-empty.
  std::string embedding_file;
  // Geography only: ZIP-prefix-to-state ranges, tab-separated
  // "lo hi STATE" rows.
  std::string zip_table_path;
  // Age bracket upper bounds (exclusive); labels are derived.
  std::vector<int> age_brackets = {18, 25, 35, 45, 50, 56};
};

struct MovieLensInstance {
  ProblemInstance instance;
  std::vector<std::string> agent_labels;
  int num_users = 0;
  int num_movies = 0;
};

// Builds one bandit instance from MovieLens-100k files: agents are the
// user classes of the chosen attribute, the (shared) action set is the
// movie embedding matrix, and the linear parameter is fit to the
// observed ratings.  Deterministic given the files and the spec.
MovieLensInstance load_movielens(const MovieLensSpec& spec);

// Parsed movie embedding interchange file.
Eigen::MatrixXd load_embedding_file(const std::string& path);
void save_embedding_file(const std::string& path, const Eigen::MatrixXd& embeddings);

}  // namespace banditgame
