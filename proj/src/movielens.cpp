#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "banditgame/errors.hpp"
#include "banditgame/instances.hpp"

namespace banditgame {

namespace {

struct UserRow {
  int id = 0;
  int age = 0;
  char gender = 'M';
  std::string occupation;
  std::string zip;
};

struct RawRating {
  int user = 0;
  int movie = 0;
  double rating = 0.0;
};

[[noreturn]] void ingest_fail(const std::string& path, long line, const std::string& what) {
  throw IngestionError(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<RawRating> parse_ratings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open ratings file " + path);
  std::vector<RawRating> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    RawRating r;
    long timestamp = 0;
    if (!(row >> r.user >> r.movie >> r.rating >> timestamp))
      ingest_fail(path, lineno, "expected 'user<TAB>item<TAB>rating<TAB>timestamp'");
    if (r.user < 1 || r.movie < 1) ingest_fail(path, lineno, "ids must be positive");
    if (r.rating < 1.0 || r.rating > 5.0) ingest_fail(path, lineno, "rating outside 1..5");
    out.push_back(r);
  }
  if (out.empty()) throw IngestionError(path + ": no rating rows");
  return out;
}

std::vector<UserRow> parse_users(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open users file " + path);
  std::vector<UserRow> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, '|')) fields.push_back(field);
    if (fields.size() < 5) ingest_fail(path, lineno, "expected 'id|age|gender|occupation|zip'");
    UserRow u;
    try {
      u.id = std::stoi(fields[0]);
      u.age = std::stoi(fields[1]);
    } catch (const std::exception&) {
      ingest_fail(path, lineno, "non-numeric id or age");
    }
    if (fields[2].empty()) ingest_fail(path, lineno, "empty gender field");
    u.gender = fields[2][0];
    u.occupation = fields[3];
    u.zip = fields[4];
    out.push_back(u);
  }
  if (out.empty()) throw IngestionError(path + ": no user rows");
  return out;
}

// Occupation classes in a fixed reporting order; the raw MovieLens
// occupations are folded into eight groups.
const std::vector<std::pair<std::string, std::vector<std::string>>>& occupation_groups() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
      {"student", {"student"}},
      {"technical", {"engineer", "programmer", "technician"}},
      {"management", {"administrator", "executive", "marketing"}},
      {"creative", {"artist", "entertainment", "writer"}},
      {"academic", {"educator", "librarian", "scientist"}},
      {"business", {"lawyer", "salesman"}},
      {"healthcare", {"doctor", "healthcare"}},
      {"non-professional", {"homemaker", "none", "other", "retired"}},
  };
  return groups;
}

struct ZipRange {
  int lo = 0;
  int hi = 0;
  std::string state;
};

std::vector<ZipRange> parse_zip_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open ZIP prefix table " + path);
  std::vector<ZipRange> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    ZipRange z;
    if (!(row >> z.lo >> z.hi >> z.state))
      ingest_fail(path, lineno, "expected 'lo<TAB>hi<TAB>STATE'");
    out.push_back(z);
  }
  if (out.empty()) throw IngestionError(path + ": no ZIP ranges");
  return out;
}

std::string state_of_zip(const std::string& zip, const std::vector<ZipRange>& table) {
  if (zip.size() < 3) return "other";
  int prefix = 0;
  for (int i = 0; i < 3; ++i) {
    if (zip[static_cast<std::size_t>(i)] < '0' || zip[static_cast<std::size_t>(i)] > '9')
      return "other";
    prefix = prefix * 10 + (zip[static_cast<std::size_t>(i)] - '0');
  }
  for (const ZipRange& z : table) {
    if (prefix >= z.lo && prefix <= z.hi) return z.state;
  }
  return "other";
}

// Class label of a user under the chosen attribute, plus the canonical
// label ordering for the attribute.
struct Classifier {
  std::vector<std::string> label_order;
  std::map<int, std::string> user_class;  // user id -> label
};

Classifier classify_users(const MovieLensSpec& spec, const std::vector<UserRow>& users) {
  Classifier out;
  switch (spec.attribute) {
    case MovieLensAttribute::kGender: {
      out.label_order = {"Male", "Female"};
      for (const UserRow& u : users)
        out.user_class[u.id] = (u.gender == 'F' || u.gender == 'f') ? "Female" : "Male";
      break;
    }
    case MovieLensAttribute::kAge: {
      std::vector<int> cuts = spec.age_brackets;
      std::sort(cuts.begin(), cuts.end());
      if (cuts.empty()) throw InvalidConfigError("load_movielens: empty age brackets");
      auto bracket_label = [&](std::size_t i) -> std::string {
        if (i == 0) return "Under" + std::to_string(cuts[0]);
        if (i == cuts.size()) return std::to_string(cuts.back()) + "+";
        return std::to_string(cuts[i - 1]) + "-" + std::to_string(cuts[i] - 1);
      };
      for (std::size_t i = 0; i <= cuts.size(); ++i) out.label_order.push_back(bracket_label(i));
      for (const UserRow& u : users) {
        std::size_t i = 0;
        while (i < cuts.size() && u.age >= cuts[i]) ++i;
        out.user_class[u.id] = bracket_label(i);
      }
      break;
    }
    case MovieLensAttribute::kOccupation: {
      std::map<std::string, std::string> fold;
      for (const auto& [label, members] : occupation_groups()) {
        out.label_order.push_back(label);
        for (const std::string& occupation : members) fold[occupation] = label;
      }
      for (const UserRow& u : users) {
        const auto it = fold.find(u.occupation);
        out.user_class[u.id] = it != fold.end() ? it->second : "non-professional";
      }
      break;
    }
    case MovieLensAttribute::kGeography: {
      if (spec.zip_table_path.empty())
        throw InvalidConfigError("load_movielens: geography needs zip_table_path");
      const std::vector<ZipRange> table = parse_zip_table(spec.zip_table_path);
      std::map<int, std::string> states;
      std::vector<std::string> seen;
      for (const UserRow& u : users) {
        const std::string state = state_of_zip(u.zip, table);
        states[u.id] = state;
        if (std::find(seen.begin(), seen.end(), state) == seen.end()) seen.push_back(state);
      }
      std::sort(seen.begin(), seen.end());  // alphabetical agent order
      out.label_order = seen;
      out.user_class = std::move(states);
      break;
    }
  }
  return out;
}

}  // namespace

MovieLensAttribute parse_attribute(const std::string& name) {
  if (name == "gender") return MovieLensAttribute::kGender;
  if (name == "age") return MovieLensAttribute::kAge;
  if (name == "occupation") return MovieLensAttribute::kOccupation;
  if (name == "geography") return MovieLensAttribute::kGeography;
  throw InvalidConfigError("unknown attribute '" + name +
                           "' (expected gender, age, occupation, or geography)");
}

std::string attribute_name(MovieLensAttribute attribute) {
  switch (attribute) {
    case MovieLensAttribute::kGender: return "gender";
    case MovieLensAttribute::kAge: return "age";
    case MovieLensAttribute::kOccupation: return "occupation";
    case MovieLensAttribute::kGeography: return "geography";
  }
  return "unknown";
}

MovieLensInstance load_movielens(const MovieLensSpec& spec) {
  if (spec.horizon < 1) throw InvalidConfigError("load_movielens: horizon must be >= 1");
  if (spec.embedding_dim < 1) throw InvalidConfigError("load_movielens: d must be positive");
  const std::vector<RawRating> all_ratings = parse_ratings(spec.ratings_path);
  const std::vector<UserRow> users = parse_users(spec.users_path);

  // Most-rated-first subsampling, ties to the lower id.
  auto top_ids = [](const std::map<int, long>& counts, int keep) {
    std::vector<std::pair<int, long>> items(counts.begin(), counts.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    if (keep > 0 && keep < static_cast<int>(items.size())) items.resize(static_cast<std::size_t>(keep));
    std::vector<int> ids;
    ids.reserve(items.size());
    for (const auto& [id, count] : items) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  std::map<int, long> user_counts;
  for (const RawRating& r : all_ratings) ++user_counts[r.user];
  const std::vector<int> kept_users = top_ids(user_counts, spec.max_users);
  std::map<int, int> user_index;
  for (std::size_t i = 0; i < kept_users.size(); ++i)
    user_index[kept_users[i]] = static_cast<int>(i);

  std::map<int, long> movie_counts;
  for (const RawRating& r : all_ratings) {
    if (user_index.count(r.user)) ++movie_counts[r.movie];
  }
  const std::vector<int> kept_movies = top_ids(movie_counts, spec.max_movies);
  std::map<int, int> movie_index;
  for (std::size_t i = 0; i < kept_movies.size(); ++i)
    movie_index[kept_movies[i]] = static_cast<int>(i);

  RatingMatrix matrix;
  matrix.num_users = static_cast<int>(kept_users.size());
  matrix.num_movies = static_cast<int>(kept_movies.size());
  for (const RawRating& r : all_ratings) {
    const auto u = user_index.find(r.user);
    const auto m = movie_index.find(r.movie);
    if (u == user_index.end() || m == movie_index.end()) continue;
    matrix.ratings.push_back(RatingRecord{u->second, m->second, r.rating});
  }
  if (matrix.ratings.empty())
    throw IngestionError("load_movielens: subsampling removed every rating");

  Eigen::MatrixXd embeddings;
  if (!spec.embedding_file.empty()) {
    embeddings = load_embedding_file(spec.embedding_file);
    if (embeddings.rows() != matrix.num_movies || embeddings.cols() != spec.embedding_dim)
      throw InvalidConfigError("load_movielens: embedding file shape does not match kept movies");
  } else {
    embeddings = embed_svd(matrix, spec.embedding_dim);
  }

  std::vector<RatingRecord> regression = matrix.ratings;
  if (spec.rescale_ratings) {
    for (RatingRecord& r : regression) r.rating = (r.rating - 1.0) / 4.0;
  }
  const Eigen::VectorXd theta = fit_theta_star(embeddings, regression, spec.theta_ridge);

  // Agents: attribute classes actually present among kept users, in
  // the attribute's canonical label order.
  const Classifier classes = classify_users(spec, users);
  std::map<std::string, bool> present;
  for (int id : kept_users) {
    const auto it = classes.user_class.find(id);
    if (it == classes.user_class.end())
      throw IngestionError("load_movielens: user " + std::to_string(id) +
                           " appears in ratings but not in the users file");
    present[it->second] = true;
  }
  std::vector<std::string> labels;
  for (const std::string& label : classes.label_order) {
    if (present.count(label)) labels.push_back(label);
  }
  if (labels.empty()) throw IngestionError("load_movielens: no agent classes present");

  ActionSet set;
  set.actions = embeddings;
  MovieLensInstance out;
  out.instance = ProblemInstance::shared(theta, std::move(set), static_cast<int>(labels.size()),
                                         spec.horizon, spec.noise_std);
  out.agent_labels = std::move(labels);
  out.num_users = matrix.num_users;
  out.num_movies = matrix.num_movies;
  return out;
}

Eigen::MatrixXd load_embedding_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open embedding file " + path);
  long rows = 0;
  long cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1)
    throw IngestionError(path + ":1: expected header 'num_actions d'");
  Eigen::MatrixXd out(rows, cols);
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      if (!(in >> out(r, c)))
        throw IngestionError(path + ": truncated at row " + std::to_string(r + 2));
    }
  }
  return out;
}

void save_embedding_file(const std::string& path, const Eigen::MatrixXd& embeddings) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write embedding file " + path);
  out.precision(17);
  out << embeddings.rows() << " " << embeddings.cols() << "\n";
  for (Eigen::Index r = 0; r < embeddings.rows(); ++r) {
    for (Eigen::Index c = 0; c < embeddings.cols(); ++c) {
      if (c) out << " ";
      out << embeddings(r, c);
    }
    out << "\n";
  }
}

}  // namespace banditgame
