#include "banditgame/coalition_game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "banditgame/errors.hpp"
#include "banditgame/simplex.hpp"

namespace banditgame {

namespace {

void check_game(const TUGame& game) {
  if (game.num_agents < 1 || game.num_agents > 62)
    throw InvalidInputError("TUGame: num_agents out of range");
  if (game.values.size() != (1ULL << game.num_agents))
    throw InvalidInputError("TUGame: values array must have 2^M entries");
  if (game.values[0] != 0.0) throw InvalidInputError("TUGame: empty coalition must have value 0");
}

void check_alloc(const TUGame& game, const Allocation& alloc) {
  if (alloc.payouts.size() != static_cast<std::size_t>(game.num_agents))
    throw InvalidInputError("Allocation: payout length must equal the number of agents");
}

double alloc_sum(const Allocation& alloc, std::uint64_t mask) {
  double sum = 0.0;
  for (int a = 0; mask != 0; ++a, mask >>= 1) {
    if (mask & 1ULL) sum += alloc.payouts[static_cast<std::size_t>(a)];
  }
  return sum;
}

}  // namespace

RegretTable::RegretTable(int num_agents) : num_agents_(num_agents) {
  if (num_agents < 1 || num_agents > 62)
    throw InvalidInputError("RegretTable: num_agents out of range");
}

void RegretTable::set(std::uint64_t mask, int agent, RegretEntry entry) {
  if (mask == 0 || mask >= (1ULL << num_agents_))
    throw InvalidInputError("RegretTable::set: coalition mask out of range");
  if (agent < 0 || agent >= num_agents_ || !(mask & (1ULL << agent)))
    throw InvalidInputError("RegretTable::set: agent must be a member of the coalition");
  auto [it, inserted] = rows_.try_emplace(mask, static_cast<std::size_t>(num_agents_));
  it->second[static_cast<std::size_t>(agent)] = entry;
  filled_[mask] |= 1ULL << agent;
}

bool RegretTable::has(std::uint64_t mask, int agent) const {
  const auto it = filled_.find(mask);
  return it != filled_.end() && agent >= 0 && agent < num_agents_ &&
         (it->second & (1ULL << agent));
}

const RegretEntry& RegretTable::at(std::uint64_t mask, int agent) const {
  if (!has(mask, agent))
    throw IncompleteTableError("RegretTable: missing entry for coalition " +
                               coalition_to_string(mask) + ", agent " + std::to_string(agent));
  return rows_.at(mask)[static_cast<std::size_t>(agent)];
}

bool RegretTable::complete() const {
  for (std::uint64_t mask = 1; mask <= grand_mask(); ++mask) {
    const auto it = filled_.find(mask);
    if (it == filled_.end() || it->second != mask) return false;
  }
  return true;
}

std::string coalition_to_string(std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (int a = 0; mask != 0; ++a, mask >>= 1) {
    if (mask & 1ULL) {
      if (!first) out += ",";
      out += std::to_string(a);
      first = false;
    }
  }
  out += "}";
  return out;
}

TUGame value_from_regrets(const RegretTable& table) {
  TUGame game;
  game.num_agents = table.num_agents();
  game.values.assign(1ULL << table.num_agents(), 0.0);
  for (std::uint64_t mask = 1; mask <= table.grand_mask(); ++mask) {
    double sum = 0.0;
    for (int a = 0; a < table.num_agents(); ++a) {
      if (mask & (1ULL << a)) sum += table.at(mask, a).mean;
    }
    game.values[mask] = -sum;
  }
  return game;
}

Allocation shapley_exact(const TUGame& game, int exact_limit) {
  check_game(game);
  const int n = game.num_agents;
  if (n > exact_limit)
    throw InvalidConfigError("shapley_exact: " + std::to_string(n) +
                             " agents exceeds the exact limit; use shapley_mc");
  // Weight of a coalition of size s joined by player i:
  // s! (n-1-s)! / n! = 1 / (n * binom(n-1, s)).
  std::vector<double> weight(static_cast<std::size_t>(n), 0.0);
  double binom = 1.0;
  for (int s = 0; s < n; ++s) {
    weight[static_cast<std::size_t>(s)] = 1.0 / (static_cast<double>(n) * binom);
    binom = binom * static_cast<double>(n - 1 - s) / static_cast<double>(s + 1);
  }
  std::vector<int> popcount(game.values.size());
  for (std::size_t mask = 1; mask < game.values.size(); ++mask)
    popcount[mask] = popcount[mask >> 1] + static_cast<int>(mask & 1ULL);

  Allocation alloc;
  alloc.kind = AllocationKind::kShapleyExact;
  alloc.payouts.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t bit = 1ULL << i;
    double phi = 0.0;
    for (std::uint64_t mask = 0; mask < game.values.size(); ++mask) {
      if (mask & bit) continue;
      phi += weight[static_cast<std::size_t>(popcount[mask])] *
             (game.values[mask | bit] - game.values[mask]);
    }
    alloc.payouts[static_cast<std::size_t>(i)] = phi;
  }
  return alloc;
}

Allocation shapley_mc(const TUGame& game, long num_perms, RngStream& rng) {
  check_game(game);
  if (num_perms < 1) throw InvalidInputError("shapley_mc: num_perms must be >= 1");
  const int n = game.num_agents;
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  std::vector<double> sumsq(static_cast<std::size_t>(n), 0.0);
  for (long k = 0; k < num_perms; ++k) {
    // Fisher-Yates from the stream.
    for (int i = n - 1; i > 0; --i) {
      const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i + 1)));
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::uint64_t mask = 0;
    for (int pos = 0; pos < n; ++pos) {
      const int agent = order[static_cast<std::size_t>(pos)];
      const std::uint64_t next = mask | (1ULL << agent);
      const double marginal = game.values[next] - game.values[mask];
      sum[static_cast<std::size_t>(agent)] += marginal;
      sumsq[static_cast<std::size_t>(agent)] += marginal * marginal;
      mask = next;
    }
  }
  Allocation alloc;
  alloc.kind = AllocationKind::kShapleyMc;
  alloc.payouts.resize(static_cast<std::size_t>(n));
  alloc.stderrs.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double mean = sum[idx] / static_cast<double>(num_perms);
    alloc.payouts[idx] = mean;
    if (num_perms > 1) {
      const double var = std::max(
          0.0, (sumsq[idx] - static_cast<double>(num_perms) * mean * mean) /
                   static_cast<double>(num_perms - 1));
      alloc.stderrs[idx] = std::sqrt(var / static_cast<double>(num_perms));
    } else {
      alloc.stderrs[idx] = 0.0;
    }
  }
  return alloc;
}

Allocation shapley_all_permutations(const TUGame& game) {
  check_game(game);
  const int n = game.num_agents;
  if (n > 10)
    throw InvalidConfigError("shapley_all_permutations: M! enumeration is limited to M <= 10");
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sum(static_cast<std::size_t>(n), 0.0);
  long count = 0;
  do {
    std::uint64_t mask = 0;
    for (int pos = 0; pos < n; ++pos) {
      const int agent = order[static_cast<std::size_t>(pos)];
      const std::uint64_t next = mask | (1ULL << agent);
      sum[static_cast<std::size_t>(agent)] += game.values[next] - game.values[mask];
      mask = next;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  Allocation alloc;
  alloc.kind = AllocationKind::kShapleyMc;
  alloc.payouts.resize(static_cast<std::size_t>(n));
  alloc.stderrs.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    alloc.payouts[static_cast<std::size_t>(i)] =
        sum[static_cast<std::size_t>(i)] / static_cast<double>(count);
  return alloc;
}

ViolationReport is_in_core(const TUGame& game, const Allocation& alloc, double tol) {
  check_game(game);
  check_alloc(game, alloc);
  ViolationReport report;
  const double total = alloc_sum(alloc, game.grand_mask());
  const double grand = game.value(game.grand_mask());
  ++report.checked;
  if (std::abs(total - grand) > tol) {
    report.violations.push_back(Violation{"efficiency: sum of payouts vs v(M)", total, grand,
                                          std::abs(total - grand)});
  }
  for (std::uint64_t mask = 1; mask <= game.grand_mask(); ++mask) {
    const double lhs = alloc_sum(alloc, mask);
    const double rhs = game.value(mask);
    ++report.checked;
    if (lhs < rhs - tol) {
      report.violations.push_back(
          Violation{"coalition " + coalition_to_string(mask), lhs, rhs, rhs - lhs});
    }
  }
  return report;
}

namespace {

// Feasibility of { sum_{a in S} p_a >= v(S) - slack for all S,
// sum_a p_a = v(M) } via the substitution
// q_a = p_a - (v({a}) - slack) >= 0, which drops the singleton rows.
std::optional<Allocation> solve_core_lp(const TUGame& game, double slack) {
  const int n = game.num_agents;
  std::vector<double> lower(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    lower[static_cast<std::size_t>(a)] = game.value(1ULL << a) - slack;

  std::vector<std::uint64_t> row_masks;
  for (std::uint64_t mask = 1; mask < game.grand_mask(); ++mask) {
    if ((mask & (mask - 1)) != 0) row_masks.push_back(mask);  // skip singletons
  }
  const int rows = static_cast<int>(row_masks.size()) + 1;
  const int cols = n + static_cast<int>(row_masks.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (int r = 0; r < static_cast<int>(row_masks.size()); ++r) {
    const std::uint64_t mask = row_masks[static_cast<std::size_t>(r)];
    double shift = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) {
        a(r, i) = 1.0;
        shift += lower[static_cast<std::size_t>(i)];
      }
    }
    a(r, n + r) = -1.0;  // surplus
    b[r] = game.value(mask) - slack - shift;
  }
  for (int i = 0; i < n; ++i) a(rows - 1, i) = 1.0;
  b[rows - 1] =
      game.value(game.grand_mask()) - std::accumulate(lower.begin(), lower.end(), 0.0);

  const LpSolution lp = solve_lp(a, b, Eigen::VectorXd::Zero(cols));
  if (lp.status != LpStatus::kOptimal) return std::nullopt;

  Allocation witness;
  witness.kind = AllocationKind::kCustom;
  witness.payouts.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    witness.payouts[static_cast<std::size_t>(i)] = lp.x[i] + lower[static_cast<std::size_t>(i)];
  // Polish the efficiency equality against round-off.
  const double drift =
      (game.value(game.grand_mask()) - alloc_sum(witness, game.grand_mask())) / n;
  for (double& p : witness.payouts) p += drift;
  return witness;
}

}  // namespace

std::pair<bool, std::optional<Allocation>> core_nonempty(const TUGame& game, double tol) {
  check_game(game);
  if (game.num_agents > 12)
    throw InvalidConfigError("core_nonempty: dense simplex formulation is limited to M <= 12");

  // Exact core first; if that is empty but the caller allows slack
  // (statistical tolerances), retry with the inequalities relaxed so
  // the outcome agrees with is_in_core at the same tolerance.  The
  // retry holds back a sliver of the slack: a witness binding exactly
  // at v(S) - tol would otherwise fail its own verification on
  // round-off.
  std::optional<Allocation> witness = solve_core_lp(game, 0.0);
  if (!witness.has_value() && tol > 0.0) {
    const double headroom = 1e-9 * tol + 1e-12;
    witness = solve_core_lp(game, tol - headroom);
  }
  if (!witness.has_value()) return {false, std::nullopt};
  if (!is_in_core(game, *witness, tol).pass()) return {false, std::nullopt};
  return {true, std::move(witness)};
}

ViolationReport is_convex(const TUGame& game, double tol) {
  check_game(game);
  ViolationReport report;
  const std::uint64_t grand = game.grand_mask();
  for (int agent = 0; agent < game.num_agents; ++agent) {
    const std::uint64_t bit = 1ULL << agent;
    const std::uint64_t rest = grand & ~bit;
    // All Q subset of rest, then all S subset of Q.
    std::uint64_t q = rest;
    while (true) {
      const double marginal_q = game.values[q | bit] - game.values[q];
      std::uint64_t s = q;
      while (true) {
        if (s != q) {
          const double marginal_s = game.values[s | bit] - game.values[s];
          ++report.checked;
          if (marginal_q < marginal_s - tol) {
            report.violations.push_back(
                Violation{"a=" + std::to_string(agent) + ", S=" + coalition_to_string(s) +
                              ", Q=" + coalition_to_string(q),
                          marginal_s, marginal_q, marginal_s - marginal_q});
          }
        }
        if (s == 0) break;
        s = (s - 1) & q;
      }
      if (q == 0) break;
      q = (q - 1) & rest;
    }
  }
  return report;
}

Allocation grand_payout(const RegretTable& table) {
  const std::uint64_t grand = table.grand_mask();
  Allocation alloc;
  alloc.kind = AllocationKind::kGrandCoalitionRegret;
  alloc.payouts.resize(static_cast<std::size_t>(table.num_agents()));
  alloc.stderrs.resize(static_cast<std::size_t>(table.num_agents()));
  for (int a = 0; a < table.num_agents(); ++a) {
    const RegretEntry& entry = table.at(grand, a);
    alloc.payouts[static_cast<std::size_t>(a)] = -entry.mean;
    alloc.stderrs[static_cast<std::size_t>(a)] = entry.stderr_;
  }
  return alloc;
}

AxiomReport axiom_report(const TUGame& game, const Allocation& alloc, double tol) {
  check_game(game);
  check_alloc(game, alloc);
  AxiomReport report;
  const int n = game.num_agents;
  const std::uint64_t grand = game.grand_mask();

  const double total = alloc_sum(alloc, grand);
  ++report.efficiency.checked;
  if (std::abs(total - game.value(grand)) > tol) {
    report.efficiency.violations.push_back(Violation{
        "efficiency", total, game.value(grand), std::abs(total - game.value(grand))});
  }

  // Dummy player: an agent adding exactly its singleton value to every
  // coalition must be paid exactly that value.
  for (int agent = 0; agent < n; ++agent) {
    const std::uint64_t bit = 1ULL << agent;
    const double solo = game.value(bit);
    bool dummy = true;
    for (std::uint64_t mask = 0; mask <= grand && dummy; ++mask) {
      if (mask & bit) continue;
      if (std::abs(game.values[mask | bit] - game.values[mask] - solo) > tol) dummy = false;
    }
    if (!dummy) continue;
    ++report.dummy.checked;
    const double paid = alloc.payouts[static_cast<std::size_t>(agent)];
    if (std::abs(paid - solo) > tol) {
      report.dummy.violations.push_back(
          Violation{"dummy agent " + std::to_string(agent), paid, solo, std::abs(paid - solo)});
    }
  }

  // Equal treatment: two agents interchangeable in every coalition
  // must receive equal payouts.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::uint64_t bi = 1ULL << i;
      const std::uint64_t bj = 1ULL << j;
      bool equals = true;
      for (std::uint64_t mask = 0; mask <= grand && equals; ++mask) {
        if (mask & (bi | bj)) continue;
        if (std::abs(game.values[mask | bi] - game.values[mask | bj]) > tol) equals = false;
      }
      if (!equals) continue;
      ++report.symmetry.checked;
      const double pi = alloc.payouts[static_cast<std::size_t>(i)];
      const double pj = alloc.payouts[static_cast<std::size_t>(j)];
      if (std::abs(pi - pj) > tol) {
        report.symmetry.violations.push_back(
            Violation{"equals " + std::to_string(i) + "," + std::to_string(j), pi, pj,
                      std::abs(pi - pj)});
      }
    }
  }
  return report;
}

}  // namespace banditgame
