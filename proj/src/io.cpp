#include "banditgame/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "banditgame/errors.hpp"
#include "banditgame/instances.hpp"

namespace banditgame {

using nlohmann::json;

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace {

json action_set_to_json(const ActionSet& set) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < set.actions.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < set.actions.cols(); ++c) row.push_back(set.actions(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ActionSet action_set_from_json(const json& rows, int dim) {
  ActionSet set;
  set.actions.resize(static_cast<Eigen::Index>(rows.size()), dim);
  Eigen::Index r = 0;
  for (const json& row : rows) {
    if (static_cast<int>(row.size()) != dim)
      throw IngestionError("instance file: action length mismatch");
    Eigen::Index c = 0;
    for (const json& v : row) set.actions(r, c++) = v.get<double>();
    ++r;
  }
  return set;
}

// Instance files may name a generator instead of spelling the action
// profile out; the generator is re-run with the stored parameters.
ProblemInstance instance_from_generator(const json& generator) {
  const std::string name = generator.at("name").get<std::string>();
  SyntheticSpec spec;
  if (generator.contains("horizon")) spec.horizon = generator.at("horizon").get<int>();
  if (generator.contains("noise_std")) spec.noise_std = generator.at("noise_std").get<double>();
  if (name == "cyclic-symmetric") {
    spec.family = SyntheticFamily::kCyclicSymmetric;
    return make_cyclic_synthetic(spec);
  }
  if (name == "asymmetric-hub") {
    spec.family = SyntheticFamily::kAsymmetricHub;
    return make_asymmetric_synthetic(spec);
  }
  throw IngestionError("instance file: unknown generator '" + name + "'");
}

}  // namespace

void save_instance(const std::string& path, const ProblemInstance& instance,
                   const std::vector<std::string>& labels) {
  json doc;
  doc["format"] = "banditgame-instance-v1";
  doc["dimension"] = instance.dimension();
  doc["num_agents"] = instance.num_agents();
  doc["horizon"] = instance.horizon();
  doc["noise_std"] = instance.noise_std();
  json theta = json::array();
  for (int i = 0; i < instance.dimension(); ++i) theta.push_back(instance.theta_star()[i]);
  doc["theta_star"] = std::move(theta);
  json actions;
  switch (instance.layout()) {
    case ActionLayout::kShared:
      actions["layout"] = "shared";
      actions["set"] = action_set_to_json(instance.action_set(0, 1));
      break;
    case ActionLayout::kPerAgent: {
      actions["layout"] = "per_agent";
      json sets = json::array();
      for (int a = 0; a < instance.num_agents(); ++a)
        sets.push_back(action_set_to_json(instance.action_set(a, 1)));
      actions["sets"] = std::move(sets);
      break;
    }
    case ActionLayout::kPerAgentPerTime: {
      actions["layout"] = "per_agent_per_time";
      json sets = json::array();
      for (int a = 0; a < instance.num_agents(); ++a) {
        json per_time = json::array();
        for (int t = 1; t <= instance.horizon(); ++t)
          per_time.push_back(action_set_to_json(instance.action_set(a, t)));
        sets.push_back(std::move(per_time));
      }
      actions["sets"] = std::move(sets);
      break;
    }
  }
  doc["actions"] = std::move(actions);
  if (!labels.empty()) doc["agent_labels"] = labels;
  write_text_file(path, doc.dump(2) + "\n");
}

void save_generator_instance(const std::string& path, const std::string& generator_name,
                             int horizon, double noise_std) {
  json doc;
  doc["format"] = "banditgame-instance-v1";
  json generator;
  generator["name"] = generator_name;
  generator["horizon"] = horizon;
  generator["noise_std"] = noise_std;
  doc["generator"] = std::move(generator);
  write_text_file(path, doc.dump(2) + "\n");
}

ProblemInstance load_instance(const std::string& path, std::vector<std::string>* labels) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw IngestionError(path + ": " + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "banditgame-instance-v1")
      throw IngestionError(path + ": unknown instance format");
    if (doc.contains("generator")) {
      if (labels != nullptr) labels->clear();
      return instance_from_generator(doc.at("generator"));
    }
    const int dim = doc.at("dimension").get<int>();
    const int num_agents = doc.at("num_agents").get<int>();
    const int horizon = doc.at("horizon").get<int>();
    const double noise_std = doc.at("noise_std").get<double>();
    Eigen::VectorXd theta(dim);
    const json& theta_json = doc.at("theta_star");
    if (static_cast<int>(theta_json.size()) != dim)
      throw IngestionError(path + ": theta_star length mismatch");
    for (int i = 0; i < dim; ++i) theta[i] = theta_json[static_cast<std::size_t>(i)].get<double>();
    if (labels != nullptr) {
      labels->clear();
      if (doc.contains("agent_labels"))
        *labels = doc["agent_labels"].get<std::vector<std::string>>();
    }
    const json& actions = doc.at("actions");
    const std::string layout = actions.at("layout").get<std::string>();
    if (layout == "shared") {
      return ProblemInstance::shared(std::move(theta), action_set_from_json(actions.at("set"), dim),
                                     num_agents, horizon, noise_std);
    }
    if (layout == "per_agent") {
      std::vector<ActionSet> sets;
      for (const json& s : actions.at("sets")) sets.push_back(action_set_from_json(s, dim));
      return ProblemInstance::per_agent(std::move(theta), std::move(sets), horizon, noise_std);
    }
    if (layout == "per_agent_per_time") {
      std::vector<std::vector<ActionSet>> sets;
      for (const json& per_time : actions.at("sets")) {
        std::vector<ActionSet> row;
        for (const json& s : per_time) row.push_back(action_set_from_json(s, dim));
        sets.push_back(std::move(row));
      }
      return ProblemInstance::per_agent_per_time(std::move(theta), std::move(sets), noise_std);
    }
    throw IngestionError(path + ": unknown action layout '" + layout + "'");
  } catch (const json::exception& e) {
    throw IngestionError(path + ": " + e.what());
  }
}

std::string raw_regrets_csv(const std::vector<RawRegretRow>& rows) {
  std::string out = "mask,agent,rep,regret\n";
  for (const RawRegretRow& row : rows) {
    out += std::to_string(row.mask) + "," + std::to_string(row.agent) + "," +
           std::to_string(row.rep) + "," + format_double(row.regret) + "\n";
  }
  return out;
}

std::string regret_table_csv(const RegretTable& table) {
  std::string out = "mask,agent,mean,stderr,nreps\n";
  for (const auto& [mask, entries] : table.rows()) {
    for (int a = 0; a < table.num_agents(); ++a) {
      if (!table.has(mask, a)) continue;
      const RegretEntry& e = entries[static_cast<std::size_t>(a)];
      out += std::to_string(mask) + "," + std::to_string(a) + "," + format_double(e.mean) + "," +
             format_double(e.stderr_) + "," + std::to_string(e.num_reps) + "\n";
    }
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> parse_csv_body(const std::string& content,
                                                     const std::string& expected_header,
                                                     const char* what) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line != expected_header)
    throw IngestionError(std::string(what) + ": expected header '" + expected_header + "'");
  std::vector<std::vector<std::string>> rows;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream row(line);
    while (std::getline(row, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

RegretTable parse_regret_table_csv(const std::string& content) {
  const auto rows = parse_csv_body(content, "mask,agent,mean,stderr,nreps", "regret table csv");
  int num_agents = 1;
  for (const auto& fields : rows) {
    if (fields.size() != 5) throw IngestionError("regret table csv: expected 5 fields per row");
    num_agents = std::max(num_agents, std::stoi(fields[1]) + 1);
    const std::uint64_t mask = std::stoull(fields[0]);
    while ((1ULL << num_agents) - 1 < mask) ++num_agents;
  }
  RegretTable table(num_agents);
  for (const auto& fields : rows) {
    table.set(std::stoull(fields[0]), std::stoi(fields[1]),
              RegretEntry{std::stod(fields[2]), std::stod(fields[3]), std::stoi(fields[4])});
  }
  return table;
}

std::string game_csv(const TUGame& game) {
  std::string out = "mask,value\n";
  for (std::uint64_t mask = 0; mask < game.values.size(); ++mask) {
    out += std::to_string(mask) + "," + format_double(game.values[mask]) + "\n";
  }
  return out;
}

TUGame parse_game_csv(const std::string& content) {
  const auto rows = parse_csv_body(content, "mask,value", "game csv");
  std::uint64_t max_mask = 0;
  for (const auto& fields : rows) {
    if (fields.size() != 2) throw IngestionError("game csv: expected 2 fields per row");
    max_mask = std::max<std::uint64_t>(max_mask, std::stoull(fields[0]));
  }
  TUGame game;
  game.num_agents = 0;
  while (((1ULL << game.num_agents) - 1) < max_mask) ++game.num_agents;
  game.num_agents = std::max(game.num_agents, 1);
  game.values.assign(1ULL << game.num_agents, 0.0);
  for (const auto& fields : rows) game.values[std::stoull(fields[0])] = std::stod(fields[1]);
  if (game.values[0] != 0.0) throw IngestionError("game csv: empty coalition value must be 0");
  return game;
}

std::string scatter_csv(const std::vector<std::string>& labels, const Allocation& shapley,
                        const Allocation& payout) {
  std::string out = "agent,label,shapley_mean,shapley_err,payout_mean,payout_err\n";
  for (std::size_t a = 0; a < payout.payouts.size(); ++a) {
    const std::string label = a < labels.size() ? labels[a] : std::to_string(a);
    const double sh_err = a < shapley.stderrs.size() ? shapley.stderrs[a] : 0.0;
    const double p_err = a < payout.stderrs.size() ? payout.stderrs[a] : 0.0;
    out += std::to_string(a) + "," + label + "," + format_double(shapley.payouts[a]) + "," +
           format_double(sh_err) + "," + format_double(payout.payouts[a]) + "," +
           format_double(p_err) + "\n";
  }
  return out;
}

std::string allocation_csv(const Allocation& alloc) {
  std::string out = "agent,payout,stderr\n";
  for (std::size_t a = 0; a < alloc.payouts.size(); ++a) {
    const double se = a < alloc.stderrs.size() ? alloc.stderrs[a] : 0.0;
    out += std::to_string(a) + "," + format_double(alloc.payouts[a]) + "," + format_double(se) +
           "\n";
  }
  return out;
}

std::string curve_csv(const RegretCurve& curve) {
  std::string out = "t,mean,stderr\n";
  for (std::size_t t = 0; t < curve.values.size(); ++t) {
    const double se = t < curve.stderrs.size() ? curve.stderrs[t] : 0.0;
    out += std::to_string(t) + "," + format_double(curve.values[t]) + "," + format_double(se) + "\n";
  }
  return out;
}

RegretCurve parse_curve_csv(const std::string& content) {
  const auto rows = parse_csv_body(content, "t,mean,stderr", "curve csv");
  RegretCurve curve;
  curve.values.resize(rows.size());
  curve.stderrs.resize(rows.size());
  for (const auto& fields : rows) {
    if (fields.size() != 3) throw IngestionError("curve csv: expected 3 fields per row");
    const std::size_t t = std::stoull(fields[0]);
    if (t >= curve.values.size()) throw IngestionError("curve csv: t out of range");
    curve.values[t] = std::stod(fields[1]);
    curve.stderrs[t] = std::stod(fields[2]);
  }
  if (!curve.values.empty() && curve.values[0] != 0.0)
    throw IngestionError("curve csv: value at t = 0 must be 0");
  return curve;
}

std::string trajectory_csv(const std::vector<Trajectory>& trajectories) {
  std::string out = "agent,t,action_index,reward,gap\n";
  for (const Trajectory& trajectory : trajectories) {
    double previous = 0.0;
    for (std::size_t i = 0; i < trajectory.entries.size(); ++i) {
      const TrajectoryEntry& e = trajectory.entries[i];
      const double cumulative = trajectory.regret_curve[i];
      out += std::to_string(trajectory.agent) + "," + std::to_string(e.t) + "," +
             std::to_string(e.action_index) + "," + format_double(e.reward) + "," +
             format_double(cumulative - previous) + "\n";
      previous = cumulative;
    }
  }
  return out;
}

}  // namespace banditgame
