// Copyright 2026 The gamevar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAMEVAR_ORACLE_HPP_
#define GAMEVAR_ORACLE_HPP_

// Brute-force ground truth. Everything here enumerates the conditioning
// player's joint pre-committed actions and terminal histories directly and
// shares no algebra with decomp_exact.hpp.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "gamevar/decomp_exact.hpp"
#include "gamevar/errors.hpp"
#include "gamevar/game.hpp"
#include "gamevar/player.hpp"
#include "gamevar/policy.hpp"
#include "gamevar/population.hpp"
#include "gamevar/traversal.hpp"

namespace gamevar {

inline constexpr double kDefaultEnumerationCap = 1e6;

// One action per info state of the conditioning player. `choice` is indexed
// by info state (-1 for info states of other players).
struct JointAssignment {
  std::vector<int> choice;
  double probability = 1.0;
};

// Calls fn for each joint assignment with positive probability.
inline void ForEachAssignment(const GameTree& tree, const BehavioralPolicy& policy,
                              double cap,
                              const std::function<void(const JointAssignment&)>& fn) {
  const std::vector<int> owned = tree.InfoStatesOf(policy.owner());
  double count = 1.0;
  for (int u : owned) count *= static_cast<double>(tree.info_state(u).num_actions());
  if (count > cap) throw CapExceeded("joint assignment count", count, cap);

  JointAssignment current;
  current.choice.assign(tree.num_info_states(), -1);
  for (int u : owned) current.choice[u] = 0;
  while (true) {
    current.probability = 1.0;
    for (int u : owned) current.probability *= policy.probs(u)[current.choice[u]];
    if (current.probability > 0.0) fn(current);
    std::size_t k = 0;
    for (; k < owned.size(); ++k) {
      const int u = owned[k];
      if (++current.choice[u] < static_cast<int>(tree.info_state(u).num_actions())) break;
      current.choice[u] = 0;
    }
    if (k == owned.size()) break;
  }
}

inline std::vector<JointAssignment> EnumerateAssignments(
    const GameTree& tree, const BehavioralPolicy& policy,
    double cap = kDefaultEnumerationCap) {
  std::vector<JointAssignment> out;
  ForEachAssignment(tree, policy, cap,
                    [&](const JointAssignment& a) { out.push_back(a); });
  return out;
}

namespace oracle_internal {

// True when every action the player takes along z matches the assignment.
inline bool Consistent(const TerminalHistory& z, PlayerRef player,
                       const JointAssignment& assignment) {
  for (const TraceStep& step : z.path.trace(player)) {
    if (assignment.choice[step.info_state] != step.action) return false;
  }
  return true;
}

struct Moments {
  double first = 0.0;
  double second = 0.0;
};

// E[Y | A = assignment] and E[Y^2 | A = assignment] from pre-enumerated
// histories: sum_z r(z)^k eta_-i(z) 1[z consistent with assignment].
inline Moments ConditionalMoments(const std::vector<TerminalHistory>& histories,
                                  PlayerRef player, int target,
                                  const JointAssignment& assignment) {
  Moments m;
  for (const TerminalHistory& z : histories) {
    if (!Consistent(z, player, assignment)) continue;
    const double r = z.path.rewards[target];
    m.first += r * z.others_reach;
    m.second += r * r * z.others_reach;
  }
  return m;
}

}  // namespace oracle_internal

inline double ConditionalMean(const GameTree& tree, const PolicyProfile& profile,
                              int target, PlayerRef conditioning,
                              const JointAssignment& assignment) {
  const auto histories = EnumerateTerminalHistories(tree, profile, conditioning);
  return oracle_internal::ConditionalMoments(histories, conditioning, target, assignment)
      .first;
}

struct OracleDecomposition {
  double total = 0.0;      // V(Y)
  double explained = 0.0;  // V[E(Y | A)]
  double residual = 0.0;   // E[V(Y | A)], computed directly
  double probability_mass = 0.0;
  std::size_t assignments = 0;
};

inline OracleDecomposition OracleDecompose(const GameTree& tree,
                                           const PolicyProfile& profile, int target,
                                           PlayerRef conditioning,
                                           double cap = kDefaultEnumerationCap) {
  if (!conditioning.valid_for(tree.player_count())) {
    throw InvalidArgument("unknown player " + conditioning.ToString());
  }
  if (target < 0 || target >= tree.player_count()) {
    throw InvalidArgument("unknown player " + std::to_string(target));
  }
  const auto histories = EnumerateTerminalHistories(tree, profile, conditioning);
  const BehavioralPolicy policy = PolicyOf(tree, profile, conditioning);
  std::vector<std::pair<double, oracle_internal::Moments>> rows;
  ForEachAssignment(tree, policy, cap, [&](const JointAssignment& a) {
    rows.emplace_back(a.probability, oracle_internal::ConditionalMoments(
                                         histories, conditioning, target, a));
  });
  OracleDecomposition out;
  out.assignments = rows.size();
  double mean = 0.0;
  for (const auto& [p, m] : rows) {
    out.probability_mass += p;
    mean += p * m.first;
  }
  for (const auto& [p, m] : rows) {
    out.explained += p * (m.first - mean) * (m.first - mean);
    out.residual += p * (m.second - m.first * m.first);
  }
  for (const TerminalHistory& z : histories) {
    const double d = z.path.rewards[target] - mean;
    out.total += z.reach * d * d;
  }
  return out;
}

inline double OracleExplainedVariance(const GameTree& tree, const PolicyProfile& profile,
                                      int target, PlayerRef conditioning,
                                      double cap = kDefaultEnumerationCap) {
  return OracleDecompose(tree, profile, target, conditioning, cap).explained;
}

// Three-way decomposition by nested enumeration: rating pairs, policy
// pairs, chance assignments, terminal histories. The remaining term is
// computed directly as E[V(Y | chance, ratings)], not by subtraction.
inline ThreeWayReport OracleThreeway(const GameTree& tree,
                                     const RatedPopulation& population,
                                     double cap = kDefaultEnumerationCap, int target = 0) {
  CheckZeroSumTwoPlayer(tree);
  population.Validate(tree);
  const std::size_t members = population.members.size();
  const BehavioralPolicy chance = BehavioralPolicy::ChancePolicy(tree);
  double chance_count = 1.0;
  for (int u : tree.InfoStatesOf(PlayerRef::Chance())) {
    chance_count *= static_cast<double>(tree.info_state(u).num_actions());
  }
  const double work = chance_count * static_cast<double>(members * members);
  if (work > cap) throw CapExceeded("policy pairs x chance assignments", work, cap);
  const std::vector<JointAssignment> assignments = EnumerateAssignments(tree, chance, cap);

  // Per rating pair: summed conditional moments per assignment and the
  // number of policy pairs folded in.
  struct Cell {
    std::vector<oracle_internal::Moments> by_assignment;
    int pairs = 0;
  };
  std::map<std::pair<double, double>, Cell> cells;
  for (std::size_t i = 0; i < members; ++i) {
    for (std::size_t j = 0; j < members; ++j) {
      const PolicyProfile profile(
          {population.members[i].seats[0], population.members[j].seats[1]});
      const auto histories =
          EnumerateTerminalHistories(tree, profile, PlayerRef::Chance());
      Cell& cell = cells[{population.members[i].rating, population.members[j].rating}];
      cell.by_assignment.resize(assignments.size());
      ++cell.pairs;
      for (std::size_t a = 0; a < assignments.size(); ++a) {
        const auto m = oracle_internal::ConditionalMoments(
            histories, PlayerRef::Chance(), target, assignments[a]);
        cell.by_assignment[a].first += m.first;
        cell.by_assignment[a].second += m.second;
      }
    }
  }

  const double pair_count = static_cast<double>(members * members);
  double grand_mean = 0.0;
  double grand_second = 0.0;
  std::vector<std::pair<double, double>> rating_means;  // (weight, mean)
  double chance_term = 0.0;
  double remaining = 0.0;
  for (auto& [ratings, cell] : cells) {
    const double weight = cell.pairs / pair_count;
    double mean = 0.0;
    for (std::size_t a = 0; a < assignments.size(); ++a) {
      const double p = assignments[a].probability;
      const double m1 = cell.by_assignment[a].first / cell.pairs;
      const double m2 = cell.by_assignment[a].second / cell.pairs;
      mean += p * m1;
      grand_second += weight * p * m2;
      remaining += weight * p * (m2 - m1 * m1);
    }
    double spread = 0.0;
    for (std::size_t a = 0; a < assignments.size(); ++a) {
      const double d = cell.by_assignment[a].first / cell.pairs - mean;
      spread += assignments[a].probability * d * d;
    }
    chance_term += weight * spread;
    grand_mean += weight * mean;
    rating_means.emplace_back(weight, mean);
  }
  ThreeWayReport report;
  for (const auto& [weight, mean] : rating_means) {
    report.skill += weight * (mean - grand_mean) * (mean - grand_mean);
  }
  report.chance = chance_term;
  report.remaining = std::max(remaining, 0.0);
  report.total = grand_second - grand_mean * grand_mean;
  return report;
}

struct OracleCheckResult {
  double exact = 0.0;
  double oracle = 0.0;
  double tolerance = 0.0;
  bool agree = false;
};

using ExplainedFn = std::function<double(const GameTree&, const PolicyProfile&, int, PlayerRef)>;

inline double DefaultExplained(const GameTree& tree, const PolicyProfile& profile,
                               int target, PlayerRef conditioning) {
  return ExplainedVariance(tree, profile, target, conditioning).explained;
}

// Differential check of an explained-variance implementation against the
// oracle: agreement within 1e-9 * max(1, V(Y)).
inline OracleCheckResult OracleCheck(const GameTree& tree, const PolicyProfile& profile,
                                     int target, PlayerRef conditioning,
                                     double cap = kDefaultEnumerationCap,
                                     const ExplainedFn& exact = DefaultExplained) {
  const OracleDecomposition truth = OracleDecompose(tree, profile, target, conditioning, cap);
  OracleCheckResult r;
  r.oracle = truth.explained;
  r.exact = exact(tree, profile, target, conditioning);
  r.tolerance = 1e-9 * std::max(1.0, truth.total);
  r.agree = std::fabs(r.exact - r.oracle) <= r.tolerance;
  return r;
}

}  // namespace gamevar

#endif  // GAMEVAR_ORACLE_HPP_
