#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "banditgame/rng.hpp"

namespace banditgame {

// Coalitions are bitmasks over agent indices 0..M-1; bit a set means
// agent a is a member.  All enumerations run in ascending mask /
// ascending agent order, so results are reproducible.

struct RegretEntry {
  double mean = 0.0;
  double stderr_ = 0.0;
  int num_reps = 0;
};

// Mean and standard-error pseudo-regret per (coalition, member agent).
class RegretTable {
 public:
  explicit RegretTable(int num_agents);

  int num_agents() const { return num_agents_; }
  std::uint64_t grand_mask() const { return (1ULL << num_agents_) - 1; }

  void set(std::uint64_t mask, int agent, RegretEntry entry);
  bool has(std::uint64_t mask, int agent) const;
  const RegretEntry& at(std::uint64_t mask, int agent) const;

  // True when every one of the 2^M - 1 non-empty coalitions has an
  // entry for each of its members.
  bool complete() const;

  const std::map<std::uint64_t, std::vector<RegretEntry>>& rows() const { return rows_; }

 private:
  int num_agents_;
  std::map<std::uint64_t, std::vector<RegretEntry>> rows_;  // mask -> per-agent slots
  std::map<std::uint64_t, std::uint64_t> filled_;           // mask -> bitmask of set agents
};

// Characteristic function of the collaboration game over coalition
// bitmasks; values[0] (the empty coalition) is always 0.
struct TUGame {
  int num_agents = 0;
  std::vector<double> values;  // size 1 << num_agents

  double value(std::uint64_t mask) const { return values[mask]; }
  std::uint64_t grand_mask() const { return (1ULL << num_agents) - 1; }
};

enum class AllocationKind { kShapleyExact, kShapleyMc, kGrandCoalitionRegret, kCustom };

// A per-agent payout profile, optionally with per-agent standard
// errors (Monte Carlo estimates and simulation-derived payouts).
struct Allocation {
  std::vector<double> payouts;
  std::vector<double> stderrs;  // empty when not applicable
  AllocationKind kind = AllocationKind::kCustom;
};

struct Violation {
  std::string witness;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

struct ViolationReport {
  std::vector<Violation> violations;
  long checked = 0;
  bool pass() const { return violations.empty(); }
};

// Human-readable coalition, e.g. "{0,2,3}".
std::string coalition_to_string(std::uint64_t mask);

// v(C) = - sum of the members' mean regrets under coalition C.
TUGame value_from_regrets(const RegretTable& table);

// Exact Shapley value by subset enumeration, O(M 2^M).
Allocation shapley_exact(const TUGame& game, int exact_limit = 20);

// Unbiased permutation-sampling estimate with per-agent standard
// errors (sample std of the marginals / sqrt(num_perms)).
Allocation shapley_mc(const TUGame& game, long num_perms, RngStream& rng);

// Test hook: averages the marginals of every one of the M!
// permutations exactly once; must agree with shapley_exact.
Allocation shapley_all_permutations(const TUGame& game);

// Efficiency + coalitional rationality at tolerance `tol`; the report
// lists every violated constraint.
ViolationReport is_in_core(const TUGame& game, const Allocation& alloc, double tol);

// Decides core non-emptiness by direct linear feasibility of the core
// constraints (equivalent to balancedness) and returns a witness
// allocation when feasible.
std::pair<bool, std::optional<Allocation>> core_nonempty(const TUGame& game, double tol);

// Supermodularity: v(Q u {a}) - v(Q) >= v(S u {a}) - v(S) - tol for
// every a and S subset of Q, both excluding a.  Full subset-pair
// enumeration, O(M 3^(M-1)).
ViolationReport is_convex(const TUGame& game, double tol);

// The grand-coalition-regret payout p_a = -R^M_a; efficient for the
// induced game by construction (same summation order).
Allocation grand_payout(const RegretTable& table);

struct AxiomReport {
  ViolationReport efficiency;
  ViolationReport dummy;
  ViolationReport symmetry;
  bool pass() const { return efficiency.pass() && dummy.pass() && symmetry.pass(); }
};

// Efficiency, dummy-player, and equal-treatment-of-equals checks of an
// allocation against a game, all at tolerance `tol`.
AxiomReport axiom_report(const TUGame& game, const Allocation& alloc, double tol);

}  // namespace banditgame
