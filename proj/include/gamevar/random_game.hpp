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

#ifndef GAMEVAR_RANDOM_GAME_HPP_
#define GAMEVAR_RANDOM_GAME_HPP_

// Seeded generators of small perfect-recall games and behavioral profiles
// for differential testing against the oracle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "gamevar/game.hpp"
#include "gamevar/policy.hpp"
#include "gamevar/rng.hpp"

namespace gamevar {

struct RandomGameOptions {
  int max_depth = 5;
  int max_branch = 3;
  int player_count = 2;
  double chance_density = 0.3;
  int max_nodes = 40;
};

// Decision nodes of one player are merged into shared info states only
// when they have the same action count and identical owner-visible
// history, so every generated game has perfect recall.
inline GameTree RandomGame(std::uint64_t seed, const RandomGameOptions& options = {}) {
  Rng rng(DeriveSeed(seed, Stream::kGameShape, 0));
  struct Proto {
    NodeKind kind = NodeKind::kTerminal;
    int player = 0;
    int branch = 0;
    int parent = -1;
    int parent_action = -1;
    int depth = 0;
    std::vector<int> children;
    std::string info_state;
  };
  std::vector<Proto> nodes(1);
  std::deque<int> frontier{0};
  int budget = options.max_nodes - 1;
  // Breadth-first growth keeps ids in depth order.
  while (!frontier.empty()) {
    const int at = frontier.front();
    frontier.pop_front();
    Proto& p = nodes[at];
    const double stop = p.depth == 0 ? 0.0 : 0.15 + 0.7 * p.depth / options.max_depth;
    if (p.depth >= options.max_depth || budget < 2 || rng.Uniform() < stop) continue;
    const int branch =
        1 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(options.max_branch)));
    const int used = std::min(branch, budget);
    if (used < 1) continue;
    p.branch = used;
    p.kind = rng.Uniform() < options.chance_density ? NodeKind::kChance : NodeKind::kDecision;
    p.player = static_cast<int>(rng.Below(static_cast<std::uint64_t>(options.player_count)));
    budget -= used;
    for (int a = 0; a < used; ++a) {
      Proto child;
      child.parent = at;
      child.parent_action = a;
      child.depth = nodes[at].depth + 1;
      nodes[at].children.push_back(static_cast<int>(nodes.size()));
      frontier.push_back(static_cast<int>(nodes.size()));
      nodes.push_back(child);
    }
  }

  // Info states in breadth-first order, so ancestors are named first.
  std::map<std::tuple<int, std::string, int>, std::vector<std::string>> groups;
  int fresh = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Proto& p = nodes[i];
    if (p.kind != NodeKind::kDecision) continue;
    std::string history;
    for (int child = static_cast<int>(i), at = p.parent; at >= 0;
         child = at, at = nodes[at].parent) {
      if (nodes[at].kind == NodeKind::kDecision && nodes[at].player == p.player) {
        history = nodes[at].info_state + "/" + std::to_string(nodes[child].parent_action) +
                  ";" + history;
      }
    }
    auto& names = groups[{p.player, history, p.branch}];
    if (!names.empty() && rng.Uniform() < 0.6) {
      p.info_state = names[rng.Below(names.size())];
    } else {
      p.info_state = "s" + std::to_string(p.player) + "_" + std::to_string(fresh++);
      names.push_back(p.info_state);
    }
  }

  GameBuilder b("random-" + std::to_string(seed), options.player_count);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Proto& p = nodes[i];
    const auto id = static_cast<std::int64_t>(i);
    if (p.branch == 0) {
      std::vector<double> rewards;
      for (int k = 0; k < options.player_count; ++k) {
        rewards.push_back(static_cast<double>(static_cast<int>(rng.Below(13)) - 6) / 2.0);
      }
      b.Leaf(id, std::move(rewards));
      continue;
    }
    if (p.kind == NodeKind::kChance) {
      std::vector<double> w(p.branch);
      double sum = 0.0;
      for (double& x : w) {
        x = rng.Uniform() < 0.1 ? 0.0 : 0.05 + rng.Uniform();
        sum += x;
      }
      if (sum == 0.0) {
        w[0] = 1.0;
        sum = 1.0;
      }
      std::vector<std::pair<std::string, double>> outcomes;
      for (int a = 0; a < p.branch; ++a) outcomes.emplace_back("o" + std::to_string(a), w[a] / sum);
      b.Chance(id, std::move(outcomes));
    } else {
      b.Decision(id, p.player, p.info_state);
    }
    for (int a = 0; a < p.branch; ++a) {
      b.AddEdge(id, (p.kind == NodeKind::kChance ? "o" : "a") + std::to_string(a),
                p.children[a]);
    }
  }
  b.Root(0);
  return b.Build();
}

// Random behavioral profile: mostly interior distributions, with some
// point masses and some zeroed actions.
inline PolicyProfile RandomProfile(const GameTree& tree, std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, Stream::kProfile, 0));
  PolicyProfile profile = PolicyProfile::Uniform(tree);
  for (int p = 0; p < tree.player_count(); ++p) {
    for (int u : tree.InfoStatesOf(PlayerRef::Player(p))) {
      const std::size_t k = tree.info_state(u).num_actions();
      std::vector<double> w(k, 0.0);
      const double mode = rng.Uniform();
      if (mode < 0.15) {
        w[rng.Below(k)] = 1.0;
      } else {
        for (double& x : w) x = 0.05 + rng.Uniform();
        if (mode < 0.25 && k > 1) w[rng.Below(k)] = 0.0;
      }
      double sum = 0.0;
      for (double x : w) sum += x;
      for (double& x : w) x /= sum;
      profile[p].Set(tree, u, std::move(w));
    }
  }
  return profile;
}

}  // namespace gamevar

#endif  // GAMEVAR_RANDOM_GAME_HPP_
