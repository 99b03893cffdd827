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

#ifndef GAMEVAR_POLICY_HPP_
#define GAMEVAR_POLICY_HPP_

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gamevar/errors.hpp"
#include "gamevar/game.hpp"
#include "gamevar/player.hpp"

namespace gamevar {

// Per-info-state action distributions for one player. The chance policy
// can be viewed through the same type (see ChancePolicy), but it lives in
// the GameTree and never in a PolicyProfile.
class BehavioralPolicy {
 public:
  BehavioralPolicy() = default;

  static BehavioralPolicy Uniform(const GameTree& tree, PlayerRef owner) {
    BehavioralPolicy policy(tree, owner);
    for (int u : tree.InfoStatesOf(owner)) {
      const std::size_t k = tree.info_state(u).num_actions();
      policy.probs_[u].assign(k, 1.0 / static_cast<double>(k));
    }
    return policy;
  }

  static BehavioralPolicy ChancePolicy(const GameTree& tree) {
    BehavioralPolicy policy(tree, PlayerRef::Chance());
    for (int u : tree.InfoStatesOf(PlayerRef::Chance())) {
      policy.probs_[u] = tree.node(tree.info_state(u).members.front()).chance_probs;
    }
    return policy;
  }

  PlayerRef owner() const { return owner_; }

  bool Covers(int info_state) const {
    return info_state >= 0 &&
           info_state < static_cast<int>(probs_.size()) &&
           !probs_[info_state].empty();
  }

  std::span<const double> probs(int info_state) const {
    if (!Covers(info_state)) {
      throw InvalidArgument("policy of player " + owner_.ToString() +
                            " does not cover info state " +
                            std::to_string(info_state));
    }
    return probs_[info_state];
  }

  // Replaces the distribution at an owned info state. Nonnegative entries
  // summing to 1 within kProbabilityTolerance are accepted and
  // renormalized; anything else throws InvalidArgument.
  void Set(const GameTree& tree, int info_state, std::vector<double> probs) {
    if (!Covers(info_state)) {
      throw InvalidArgument("info state " + std::to_string(info_state) +
                            " is not owned by player " + owner_.ToString());
    }
    if (probs.size() != tree.info_state(info_state).num_actions()) {
      throw InvalidArgument("wrong number of action probabilities for '" +
                            tree.info_state(info_state).name + "'");
    }
    double sum = 0.0;
    for (double p : probs) {
      if (!std::isfinite(p) || p < 0.0) {
        throw InvalidArgument("negative or non-finite probability at '" +
                              tree.info_state(info_state).name + "'");
      }
      sum += p;
    }
    if (!(std::fabs(sum - 1.0) <= kProbabilityTolerance)) {
      throw InvalidArgument("distribution at '" +
                            tree.info_state(info_state).name +
                            "' sums to " + std::to_string(sum));
    }
    Renormalize(probs);
    probs_[info_state] = std::move(probs);
  }

  friend bool operator==(const BehavioralPolicy&,
                         const BehavioralPolicy&) = default;

 private:
  BehavioralPolicy(const GameTree& tree, PlayerRef owner)
      : owner_(owner), probs_(tree.num_info_states()) {}

  PlayerRef owner_;
  std::vector<std::vector<double>> probs_;
};

// One behavioral policy per non-chance player.
class PolicyProfile {
 public:
  PolicyProfile() = default;
  explicit PolicyProfile(std::vector<BehavioralPolicy> policies)
      : policies_(std::move(policies)) {}

  static PolicyProfile Uniform(const GameTree& tree) {
    std::vector<BehavioralPolicy> policies;
    for (int p = 0; p < tree.player_count(); ++p) {
      policies.push_back(
          BehavioralPolicy::Uniform(tree, PlayerRef::Player(p)));
    }
    return PolicyProfile(std::move(policies));
  }

  int size() const { return static_cast<int>(policies_.size()); }
  const BehavioralPolicy& operator[](int player) const {
    return policies_.at(player);
  }
  BehavioralPolicy& operator[](int player) { return policies_.at(player); }

  // Throws InvalidArgument unless the profile has one covering policy per
  // player of `tree`.
  void Validate(const GameTree& tree) const {
    if (size() != tree.player_count()) {
      throw InvalidArgument("profile has " + std::to_string(size()) +
                            " policies for a " +
                            std::to_string(tree.player_count()) +
                            "-player game");
    }
    for (int p = 0; p < size(); ++p) {
      if (policies_[p].owner() != PlayerRef::Player(p)) {
        throw InvalidArgument("profile slot " + std::to_string(p) +
                              " holds the policy of player " +
                              policies_[p].owner().ToString());
      }
      for (int u : tree.InfoStatesOf(PlayerRef::Player(p))) {
        if (!policies_[p].Covers(u)) {
          throw InvalidArgument("policy of player " + std::to_string(p) +
                                " misses info state '" +
                                tree.info_state(u).name + "'");
        }
      }
    }
  }

  friend bool operator==(const PolicyProfile&, const PolicyProfile&) = default;

 private:
  std::vector<BehavioralPolicy> policies_;
};

// Action distribution at any info state: chance from the tree, players from
// the profile.
inline std::span<const double> ActionProbs(const GameTree& tree,
                                           const PolicyProfile& profile,
                                           int info_state) {
  const InfoState& u = tree.info_state(info_state);
  if (u.owner.is_chance()) return tree.node(u.members.front()).chance_probs;
  return profile[u.owner.index()].probs(info_state);
}

inline BehavioralPolicy PolicyOf(const GameTree& tree,
                                 const PolicyProfile& profile,
                                 PlayerRef player) {
  if (player.is_chance()) return BehavioralPolicy::ChancePolicy(tree);
  return profile[player.index()];
}

}  // namespace gamevar

#endif  // GAMEVAR_POLICY_HPP_
