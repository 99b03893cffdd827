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

#ifndef GAMEVAR_DECOMP_EXACT_HPP_
#define GAMEVAR_DECOMP_EXACT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gamevar/errors.hpp"
#include "gamevar/game.hpp"
#include "gamevar/player.hpp"
#include "gamevar/policy.hpp"
#include "gamevar/population.hpp"
#include "gamevar/traversal.hpp"

namespace gamevar {

struct OutcomeMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Mean and variance of the target's reward by terminal-history enumeration.
inline OutcomeMoments ComputeOutcomeMoments(const GameTree& tree,
                                            const PolicyProfile& profile,
                                            int target) {
  if (target < 0 || target >= tree.player_count()) {
    throw InvalidArgument("unknown player " + std::to_string(target));
  }
  const auto histories =
      EnumerateTerminalHistories(tree, profile, PlayerRef::Chance());
  OutcomeMoments m;
  for (const TerminalHistory& z : histories) m.mean += z.reach * z.path.rewards[target];
  for (const TerminalHistory& z : histories) {
    const double d = z.path.rewards[target] - m.mean;
    m.variance += d * d * z.reach;
  }
  return m;
}

inline double TotalVariance(const GameTree& tree, const PolicyProfile& profile,
                            int target) {
  return ComputeOutcomeMoments(tree, profile, target).variance;
}

struct InfoStateContribution {
  std::string info_state;
  double contribution = 0.0;
  bool reachable = true;
};

// V(Y) = explained + residual with explained = V[E(Y | A^i)] for the
// conditioning player i.
struct DecompositionReport {
  int target = 0;
  PlayerRef conditioning;
  double total_variance = 0.0;
  double explained = 0.0;
  double residual = 0.0;
  double explained_ratio = 0.0;  // explained / total, 0 when total is 0
  std::vector<InfoStateContribution> per_info_state;
};

namespace exact_internal {

inline double Clamp(double value, double tolerance, const char* what) {
  if (value < -tolerance) {
    throw std::logic_error(std::string(what) + " is negative: " +
                           std::to_string(value));
  }
  return std::max(value, 0.0);
}

}  // namespace exact_internal

// Variance of the target's outcome explained by the conditioning player's
// actions, summed over the conditioning player's reachable info states:
//   sum_u ( sum_a q(u,a)^2 pi(a|u) - v(u)^2 ) * eta_-i(u) * eta(u).
// The inner term is evaluated as sum_a pi(a|u) (q(u,a) - v(u))^2, which is
// the same quantity and cannot go negative through cancellation.
inline DecompositionReport ExplainedVariance(const GameTree& tree,
                                             const PolicyProfile& profile,
                                             int target, PlayerRef conditioning) {
  profile.Validate(tree);
  const ValueTable table = ReachAndValues(tree, profile, conditioning, target);
  DecompositionReport report;
  report.target = target;
  report.conditioning = conditioning;
  report.total_variance = TotalVariance(tree, profile, target);

  double explained = 0.0;
  for (int u : tree.InfoStatesOf(conditioning)) {
    const InfoStateValues& entry = *table[u];
    InfoStateContribution c{tree.info_state(u).name, 0.0, entry.reachable};
    if (entry.reachable) {
      const auto probs = ActionProbs(tree, profile, u);
      double spread = 0.0;
      for (std::size_t a = 0; a < probs.size(); ++a) {
        if (!entry.q[a]) continue;
        const double d = *entry.q[a] - *entry.value;
        spread += probs[a] * d * d;
      }
      c.contribution = spread * entry.others_reach * entry.reach;
    }
    explained += c.contribution;
    report.per_info_state.push_back(std::move(c));
  }

  const double total = report.total_variance;
  const double scale = std::max(1.0, total);
  report.explained = exact_internal::Clamp(explained, 1e-12, "explained variance");
  report.residual = exact_internal::Clamp(total - explained, 1e-12 * scale,
                                          "residual variance");
  report.explained_ratio = total > 0.0 ? report.explained / total : 0.0;
  return report;
}

// Skill / chance / remaining split of V(Y) for a rated population playing a
// symmetric two-player zero-sum game.
struct ThreeWayReport {
  double skill = 0.0;
  double chance = 0.0;
  double remaining = 0.0;
  double total = 0.0;
};

inline void CheckZeroSumTwoPlayer(const GameTree& tree) {
  if (tree.player_count() != 2) {
    throw AsymmetricGame("three-way decomposition needs a two-player game");
  }
  for (const Node& n : tree.nodes()) {
    if (n.kind != NodeKind::kTerminal) continue;
    if (std::fabs(n.rewards[0] + n.rewards[1]) >
        1e-12 * std::max(1.0, std::fabs(n.rewards[0]))) {
      throw AsymmetricGame("leaf " + std::to_string(n.id) +
                           " rewards do not negate");
    }
  }
}

// Exact evaluation of the three-way decomposition. Every ordered pair of
// population members is weighted 1/M^2; every joint chance assignment is
// enumerated with chance pinned and the pair's policies free.
inline ThreeWayReport ThreewayDecompose(const GameTree& tree,
                                        const RatedPopulation& population,
                                        double chance_cap = 1e6, int target = 0) {
  CheckZeroSumTwoPlayer(tree);
  population.Validate(tree);
  const std::vector<int> chance_states = tree.InfoStatesOf(PlayerRef::Chance());
  double count = 1.0;
  for (int u : chance_states) count *= static_cast<double>(tree.info_state(u).num_actions());
  if (count > chance_cap) throw CapExceeded("chance assignment count", count, chance_cap);

  // Joint chance assignments with positive probability.
  std::vector<std::vector<int>> assignments;
  std::vector<double> assignment_prob;
  std::vector<int> digits(chance_states.size(), 0);
  while (true) {
    double p = 1.0;
    std::vector<int> pinned(tree.num_info_states(), -1);
    for (std::size_t k = 0; k < chance_states.size(); ++k) {
      pinned[chance_states[k]] = digits[k];
      p *= tree.node(tree.info_state(chance_states[k]).members.front()).chance_probs[digits[k]];
    }
    if (p > 0.0) {
      assignments.push_back(std::move(pinned));
      assignment_prob.push_back(p);
    }
    std::size_t k = 0;
    for (; k < digits.size(); ++k) {
      if (++digits[k] < static_cast<int>(tree.info_state(chance_states[k]).num_actions())) break;
      digits[k] = 0;
    }
    if (k == digits.size()) break;
  }

  const std::size_t members = population.members.size();
  const double pair_weight = 1.0 / static_cast<double>(members * members);
  struct Group {
    std::vector<double> mean_by_assignment;
    int pairs = 0;
  };
  std::map<std::pair<double, double>, Group> groups;
  double mean = 0.0;
  std::vector<OutcomeMoments> pair_moments;
  for (std::size_t i = 0; i < members; ++i) {
    for (std::size_t j = 0; j < members; ++j) {
      PolicyProfile profile({population.members[i].seats[0], population.members[j].seats[1]});
      const OutcomeMoments m = ComputeOutcomeMoments(tree, profile, target);
      mean += pair_weight * m.mean;
      pair_moments.push_back(m);
      Group& g = groups[{population.members[i].rating, population.members[j].rating}];
      g.mean_by_assignment.resize(assignments.size(), 0.0);
      ++g.pairs;
      for (std::size_t a = 0; a < assignments.size(); ++a) {
        g.mean_by_assignment[a] += NodeValues(tree, profile, target, assignments[a])[tree.root()];
      }
    }
  }

  ThreeWayReport report;
  double total = 0.0;
  for (const OutcomeMoments& m : pair_moments) {
    total += pair_weight * (m.variance + (m.mean - mean) * (m.mean - mean));
  }
  double skill = 0.0;
  double chance = 0.0;
  for (auto& [ratings, g] : groups) {
    const double weight = g.pairs * pair_weight;
    double group_mean = 0.0;
    for (std::size_t a = 0; a < assignments.size(); ++a) {
      g.mean_by_assignment[a] /= g.pairs;
      group_mean += assignment_prob[a] * g.mean_by_assignment[a];
    }
    double spread = 0.0;
    for (std::size_t a = 0; a < assignments.size(); ++a) {
      const double d = g.mean_by_assignment[a] - group_mean;
      spread += assignment_prob[a] * d * d;
    }
    skill += weight * (group_mean - mean) * (group_mean - mean);
    chance += weight * spread;
  }
  const double scale = std::max(1.0, total);
  report.total = total;
  report.skill = skill;
  report.chance = chance;
  report.remaining = exact_internal::Clamp(total - skill - chance, 1e-12 * scale,
                                           "remaining variation");
  return report;
}

}  // namespace gamevar

#endif  // GAMEVAR_DECOMP_EXACT_HPP_
