#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "banditgame/assumption_checks.hpp"
#include "banditgame/bandit_env.hpp"
#include "banditgame/coalition_game.hpp"

namespace banditgame {

// Full-precision, locale-independent double formatting ("%.17g");
// every emitted number round-trips exactly.
std::string format_double(double value);

// FNV-1a 64-bit over the bytes, as a fixed-width hex string.
std::string fnv1a_hex(const std::string& bytes);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Instance files: JSON carrying d, M, T, sigma, theta* at full
// precision, and either the explicit action sets (per layout) or a
// generator name with parameters.  See README for the schema.
void save_instance(const std::string& path, const ProblemInstance& instance,
                   const std::vector<std::string>& labels = {});
// Generator form of the same schema: the named synthetic family is
// re-run with the stored parameters on load.
void save_generator_instance(const std::string& path, const std::string& generator_name,
                             int horizon, double noise_std);
ProblemInstance load_instance(const std::string& path, std::vector<std::string>* labels = nullptr);

// regrets_raw.csv: mask,agent,rep,regret
struct RawRegretRow {
  std::uint64_t mask = 0;
  int agent = 0;
  int rep = 0;
  double regret = 0.0;
};
std::string raw_regrets_csv(const std::vector<RawRegretRow>& rows);

// regrets_agg.csv: mask,agent,mean,stderr,nreps
std::string regret_table_csv(const RegretTable& table);
RegretTable parse_regret_table_csv(const std::string& content);

// game.csv: mask,value
std::string game_csv(const TUGame& game);
TUGame parse_game_csv(const std::string& content);

// One row per agent: agent,label,shapley_mean,shapley_err,payout_mean,payout_err
std::string scatter_csv(const std::vector<std::string>& labels, const Allocation& shapley,
                        const Allocation& payout);

// allocation csv: agent,payout,stderr
std::string allocation_csv(const Allocation& alloc);

// curve csv: t,mean,stderr (t = 0..T)
std::string curve_csv(const RegretCurve& curve);
RegretCurve parse_curve_csv(const std::string& content);

// Trajectory dump: agent,t,action_index,reward,gap
std::string trajectory_csv(const std::vector<Trajectory>& trajectories);

}  // namespace banditgame
