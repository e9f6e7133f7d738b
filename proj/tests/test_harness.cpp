#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "banditgame/errors.hpp"
#include "banditgame/harness.hpp"
#include "banditgame/io.hpp"

using namespace banditgame;

TEST_CASE("enumerate_coalitions ordering and guards") {
  const auto all3 = enumerate_coalitions(3, CoalitionScope::kAll, {});
  CHECK(all3.size() == 7);
  for (std::size_t i = 0; i < all3.size(); ++i) CHECK(all3[i] == i + 1);

  const auto all8 = enumerate_coalitions(8, CoalitionScope::kAll, {});
  CHECK(all8.size() == 255);

  const auto grand5 = enumerate_coalitions(5, CoalitionScope::kGrandOnly, {});
  CHECK(grand5 == std::vector<std::uint64_t>{0b11111});

  CHECK_THROWS_AS((void)enumerate_coalitions(17, CoalitionScope::kAll, {}), InvalidConfigError);
  CHECK_THROWS_AS((void)enumerate_coalitions(3, CoalitionScope::kExplicit, {}),
                  InvalidConfigError);
  CHECK_THROWS_AS((void)enumerate_coalitions(3, CoalitionScope::kExplicit, {8}),
                  InvalidConfigError);
  const auto explicit_masks = enumerate_coalitions(3, CoalitionScope::kExplicit, {5, 1, 5});
  CHECK(explicit_masks == std::vector<std::uint64_t>{1, 5});
}

namespace {

ExperimentConfig small_config(const std::string& algorithm, std::uint64_t seed) {
  ExperimentConfig config;
  config.instance_kind = "cyclic";
  config.algorithm = algorithm;
  config.horizon = 48;
  config.repetitions = 3;
  config.seed = seed;
  config.parallelism = 2;
  return config;
}

}  // namespace

TEST_CASE("run_experiment: counts, completeness, linearity cross-check") {
  const ExperimentConfig config = small_config("greedy", 2024);
  const ExperimentResult result = run_experiment(config);

  CHECK(result.masks.size() == 31);
  CHECK(result.raw.size() ==
        [&] {
          std::size_t n = 0;
          for (std::uint64_t mask : result.masks)
            n += static_cast<std::size_t>(__builtin_popcountll(mask)) * 3;
          return n;
        }());
  CHECK(result.complete);
  REQUIRE(result.mean_game.has_value());
  REQUIRE(result.shapley_per_rep.has_value());
  REQUIRE(result.shapley_of_mean_game.has_value());
  REQUIRE(result.payout.has_value());

  // Aggregated means equal the arithmetic mean of the raw rows.
  for (const RawRegretRow& row : result.raw) {
    const RegretEntry& entry = result.table.at(row.mask, row.agent);
    CHECK(entry.num_reps == 3);
  }
  for (std::uint64_t mask : result.masks) {
    for (int a = 0; a < 5; ++a) {
      if (!(mask & (1ULL << a))) continue;
      double sum = 0.0;
      for (const RawRegretRow& row : result.raw) {
        if (row.mask == mask && row.agent == a) sum += row.regret;
      }
      CHECK(std::abs(sum / 3.0 - result.table.at(mask, a).mean) <= 1e-12);
    }
  }

  // Per-rep Shapley averaged equals the Shapley of the mean game.
  for (int a = 0; a < 5; ++a) {
    CHECK(std::abs(result.shapley_per_rep->payouts[static_cast<std::size_t>(a)] -
                   result.shapley_of_mean_game->payouts[static_cast<std::size_t>(a)]) <= 1e-9);
  }

  // Payout equals the negated grand-coalition means exactly.
  for (int a = 0; a < 5; ++a) {
    CHECK(result.payout->payouts[static_cast<std::size_t>(a)] ==
          -result.table.at(result.table.grand_mask(), a).mean);
  }
}

TEST_CASE("run_experiment: grand-only scope leaves shapley unavailable") {
  ExperimentConfig config = small_config("greedy", 7);
  config.scope = CoalitionScope::kGrandOnly;
  const ExperimentResult result = run_experiment(config);
  CHECK_FALSE(result.complete);
  CHECK_FALSE(result.mean_game.has_value());
  CHECK_FALSE(result.shapley_per_rep.has_value());
  CHECK(result.payout.has_value());
}

TEST_CASE("run_experiment is deterministic and emit_report is byte-stable") {
  namespace fs = std::filesystem;
  const fs::path dir_a = fs::temp_directory_path() / "banditgame_report_a";
  const fs::path dir_b = fs::temp_directory_path() / "banditgame_report_b";
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);

  ExperimentConfig config = small_config("linucb-m", 99);
  config.horizon = 24;
  config.repetitions = 2;
  config.scope = CoalitionScope::kExplicit;
  config.explicit_masks = {0b00001, 0b00011, 0b11111};

  const ExperimentResult a = run_experiment(config);
  const ExperimentResult b = run_experiment(config);
  emit_report(a, config, dir_a.string());
  emit_report(b, config, dir_b.string());

  for (const auto& entry : fs::directory_iterator(dir_a)) {
    const std::string name = entry.path().filename().string();
    const std::string content_a = read_text_file(entry.path().string());
    const std::string content_b = read_text_file((dir_b / name).string());
    CHECK(content_a == content_b);
  }
  // Worker-pool width must not change results either.
  ExperimentConfig serial = config;
  serial.parallelism = 1;
  const ExperimentResult c = run_experiment(serial);
  for (std::size_t i = 0; i < a.raw.size(); ++i) CHECK(a.raw[i].regret == c.raw[i].regret);

  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("manifest asserts the run count and embeds the config hash") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "banditgame_manifest";
  fs::remove_all(dir);
  ExperimentConfig config = small_config("greedy", 5);
  const ExperimentResult result = run_experiment(config);
  const nlohmann::json manifest = emit_report(result, config, dir.string());
  CHECK(manifest["run_count"] == 31 * 3);
  CHECK(manifest["config_hash"].get<std::string>().size() == 16);
  CHECK(manifest["files"].size() >= 3);
  CHECK(manifest["versions"].contains("banditgame"));

  // Identity-line aid: exactly two corner points.
  const std::string identity = read_text_file((dir / "identity_line.csv").string());
  long lines = 0;
  for (char c : identity) lines += c == '\n';
  CHECK(lines == 3);

  // Allocation csv schema: one row per agent.
  const std::string payout_csv = read_text_file((dir / "payout.csv").string());
  CHECK(payout_csv.rfind("agent,payout,stderr\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("run failures surface with the (coalition, repetition) context") {
  ExperimentConfig config = small_config("metc", 1);
  config.metc_explore_len = 48;  // equals the horizon: every run is invalid
  try {
    (void)run_experiment(config);
    FAIL("expected a run failure");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("coalition") != std::string::npos);
    bool nested_seen = false;
    try {
      std::rethrow_if_nested(e);
    } catch (const InvalidConfigError&) {
      nested_seen = true;
    }
    CHECK(nested_seen);
  }
}

TEST_CASE("the desk-scale cost gate blocks oversized runs without the flag") {
  ExperimentConfig config = small_config("greedy", 1);
  config.horizon = 1 << 16;
  config.repetitions = 50;
  CHECK_THROWS_AS((void)run_experiment(config), InvalidConfigError);
}

TEST_CASE("trajectory dump is emitted on request") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "banditgame_traj";
  fs::remove_all(dir);
  ExperimentConfig config = small_config("greedy", 6);
  config.scope = CoalitionScope::kGrandOnly;
  config.emit_trajectories = true;
  const ExperimentResult result = run_experiment(config);
  emit_report(result, config, dir.string());
  const std::string dump = read_text_file((dir / "trajectories_grand_rep0.csv").string());
  CHECK(dump.rfind("agent,t,action_index,reward,gap\n", 0) == 0);
  // One row per (agent, t) plus the header.
  long lines = 0;
  for (char c : dump) lines += c == '\n';
  CHECK(lines == 1 + 5 * config.horizon);
  fs::remove_all(dir);
}

TEST_CASE("csv round-trips preserve tables, games, and curves") {
  RegretTable table(3);
  for (std::uint64_t mask = 1; mask <= 7; ++mask) {
    for (int a = 0; a < 3; ++a) {
      if (mask & (1ULL << a))
        table.set(mask, a,
                  RegretEntry{0.1 * static_cast<double>(mask) + a, 0.01 * a, 4});
    }
  }
  const RegretTable parsed = parse_regret_table_csv(regret_table_csv(table));
  CHECK(parsed.num_agents() == 3);
  for (std::uint64_t mask = 1; mask <= 7; ++mask) {
    for (int a = 0; a < 3; ++a) {
      if (!(mask & (1ULL << a))) continue;
      CHECK(parsed.at(mask, a).mean == table.at(mask, a).mean);
      CHECK(parsed.at(mask, a).stderr_ == table.at(mask, a).stderr_);
    }
  }

  const TUGame game = value_from_regrets(table);
  const TUGame game2 = parse_game_csv(game_csv(game));
  for (std::size_t mask = 0; mask < game.values.size(); ++mask)
    CHECK(game.values[mask] == game2.values[mask]);

  RegretCurve curve;
  curve.values = {0.0, 1.5, 2.25, 2.8125};
  curve.stderrs = {0.0, 0.25, 0.5, 0.125};
  const RegretCurve curve2 = parse_curve_csv(curve_csv(curve));
  for (std::size_t t = 0; t < curve.values.size(); ++t) {
    CHECK(curve.values[t] == curve2.values[t]);
    CHECK(curve.stderrs[t] == curve2.stderrs[t]);
  }
}

TEST_CASE("config json round-trip keeps resolved values") {
  ExperimentConfig config = small_config("metc", 31337);
  config.metc_explore_len = 12;
  config.more_merrier_slack = 2.5;
  const nlohmann::json doc = config.to_json();
  const ExperimentConfig back = ExperimentConfig::from_json(doc);
  CHECK(back.algorithm == "metc");
  CHECK(back.metc_explore_len == 12);
  CHECK(back.seed == 31337);
  CHECK(back.more_merrier_slack == 2.5);
  CHECK(fnv1a_hex(doc.dump()) == fnv1a_hex(back.to_json().dump()));
}
