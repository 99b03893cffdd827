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

#ifndef GAMEVAR_TRAVERSAL_HPP_
#define GAMEVAR_TRAVERSAL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gamevar/errors.hpp"
#include "gamevar/game.hpp"
#include "gamevar/player.hpp"
#include "gamevar/policy.hpp"
#include "gamevar/rng.hpp"

namespace gamevar {

struct PlayStep {
  int node = -1;
  int action = -1;
  friend bool operator==(const PlayStep&, const PlayStep&) = default;
};

// One root-to-leaf walk.
struct Playthrough {
  std::vector<PlayStep> steps;
  int terminal = -1;
  std::vector<double> rewards;
  // Indexed by PlayerRef::slot(): the subsequence of steps at that
  // player's nodes as (info state, action) pairs.
  std::vector<Trace> traces;

  const Trace& trace(PlayerRef player) const { return traces.at(player.slot()); }
  friend bool operator==(const Playthrough&, const Playthrough&) = default;
};

// Nodes in depth-first pre-order; every parent precedes its children.
inline std::vector<int> PreOrder(const GameTree& tree) {
  std::vector<int> order;
  order.reserve(tree.nodes().size());
  std::vector<int> stack{tree.root()};
  while (!stack.empty()) {
    const int at = stack.back();
    stack.pop_back();
    order.push_back(at);
    const auto& edges = tree.node(at).edges;
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
      stack.push_back(it->child);
    }
  }
  return order;
}

inline Playthrough SamplePlaythrough(const GameTree& tree,
                                     const PolicyProfile& profile, Rng& rng) {
  Playthrough play;
  play.traces.resize(static_cast<std::size_t>(tree.player_count()) + 1);
  int at = tree.root();
  while (tree.node(at).kind != NodeKind::kTerminal) {
    const Node& n = tree.node(at);
    const auto action =
        static_cast<int>(rng.Categorical(ActionProbs(tree, profile, n.info_state)));
    play.steps.push_back({at, action});
    play.traces[tree.Owner(at).slot()].push_back({n.info_state, action});
    at = n.edges[action].child;
  }
  play.terminal = at;
  play.rewards = tree.node(at).rewards;
  return play;
}

struct TerminalHistory {
  Playthrough path;
  double reach = 1.0;         // η(z)
  double player_reach = 1.0;  // ηⁱ(z), product of the player's own probabilities
  double others_reach = 1.0;  // η⁻ⁱ(z), everyone else including chance
};

// Every root-to-leaf path with its reach probabilities split between
// `player` and everyone else.
inline std::vector<TerminalHistory> EnumerateTerminalHistories(
    const GameTree& tree, const PolicyProfile& profile, PlayerRef player) {
  std::vector<TerminalHistory> out;
  struct Frame {
    int node;
    std::size_t next_action;
  };
  Playthrough path;
  path.traces.resize(static_cast<std::size_t>(tree.player_count()) + 1);
  // reach[k] holds (own, others) products after k steps.
  std::vector<std::pair<double, double>> reach{{1.0, 1.0}};
  std::vector<Frame> frames{{tree.root(), 0}};
  while (!frames.empty()) {
    Frame& f = frames.back();
    const Node& n = tree.node(f.node);
    if (n.kind != NodeKind::kTerminal && f.next_action < n.edges.size()) {
      const int a = static_cast<int>(f.next_action++);
      const PlayerRef owner = tree.Owner(f.node);
      const double p = ActionProbs(tree, profile, n.info_state)[a];
      auto [own, others] = reach.back();
      (owner == player ? own : others) *= p;
      reach.emplace_back(own, others);
      path.steps.push_back({f.node, a});
      path.traces[owner.slot()].push_back({n.info_state, a});
      frames.push_back({n.edges[a].child, 0});
      continue;
    }
    if (n.kind == NodeKind::kTerminal) {
      TerminalHistory leaf;
      leaf.path = path;
      leaf.path.terminal = f.node;
      leaf.path.rewards = n.rewards;
      leaf.player_reach = reach.back().first;
      leaf.others_reach = reach.back().second;
      leaf.reach = leaf.player_reach * leaf.others_reach;
      out.push_back(std::move(leaf));
    }
    frames.pop_back();
    if (!path.steps.empty()) {
      const int parent = path.steps.back().node;
      path.traces[tree.Owner(parent).slot()].pop_back();
      path.steps.pop_back();
      reach.pop_back();
    }
  }
  return out;
}

// Expected reward of `target` at every node under `profile`. Entries of
// `pinned` (indexed by info state, -1 = free) force the action taken at
// that info state.
inline std::vector<double> NodeValues(const GameTree& tree,
                                      const PolicyProfile& profile,
                                      int target,
                                      std::span<const int> pinned = {}) {
  std::vector<double> value(tree.nodes().size(), 0.0);
  const std::vector<int> order = PreOrder(tree);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = tree.node(*it);
    if (n.kind == NodeKind::kTerminal) {
      value[*it] = n.rewards[target];
      continue;
    }
    if (!pinned.empty() && pinned[n.info_state] >= 0) {
      value[*it] = value[n.edges[pinned[n.info_state]].child];
      continue;
    }
    const auto probs = ActionProbs(tree, profile, n.info_state);
    double v = 0.0;
    for (std::size_t a = 0; a < n.edges.size(); ++a) {
      if (probs[a] > 0.0) v += probs[a] * value[n.edges[a].child];
    }
    value[*it] = v;
  }
  return value;
}

struct NodeReach {
  std::vector<double> total;  // product of every action probability
  std::vector<double> own;    // product of the given player's probabilities
};

inline NodeReach ComputeReach(const GameTree& tree,
                              const PolicyProfile& profile, PlayerRef player) {
  NodeReach reach{std::vector<double>(tree.nodes().size(), 0.0),
                  std::vector<double>(tree.nodes().size(), 0.0)};
  reach.total[tree.root()] = 1.0;
  reach.own[tree.root()] = 1.0;
  for (int at : PreOrder(tree)) {
    const Node& n = tree.node(at);
    if (n.kind == NodeKind::kTerminal) continue;
    const auto probs = ActionProbs(tree, profile, n.info_state);
    const bool mine = tree.Owner(at) == player;
    for (std::size_t a = 0; a < n.edges.size(); ++a) {
      const int child = n.edges[a].child;
      reach.total[child] = reach.total[at] * probs[a];
      reach.own[child] = mine ? reach.own[at] * probs[a] : reach.own[at];
    }
  }
  return reach;
}

// Reach weights and value functions at one info state of the conditioning
// player, evaluated on the target player's reward.
struct InfoStateValues {
  int info_state = -1;
  double reach = 0.0;         // η(u)
  double own_reach = 0.0;     // ηⁱ(u)
  double others_reach = 0.0;  // η⁻ⁱ(u) = η(u) / ηⁱ(u)
  bool reachable = false;     // η(u) > 0; value and q undefined otherwise
  std::optional<double> value;              // v(u)
  std::vector<std::optional<double>> q;     // q(u, a); undefined where η(u)π(a|u) = 0
};

// Indexed by info state; entries for info states not owned by the
// conditioning player are empty.
using ValueTable = std::vector<std::optional<InfoStateValues>>;

inline ValueTable ReachAndValues(const GameTree& tree,
                                 const PolicyProfile& profile,
                                 PlayerRef conditioning, int target) {
  if (!conditioning.valid_for(tree.player_count())) {
    throw InvalidArgument("unknown player " + conditioning.ToString());
  }
  if (target < 0 || target >= tree.player_count()) {
    throw InvalidArgument("unknown player " + std::to_string(target));
  }
  const NodeReach reach = ComputeReach(tree, profile, conditioning);
  const std::vector<double> node_value = NodeValues(tree, profile, target);

  ValueTable table(tree.num_info_states());
  for (int u : tree.InfoStatesOf(conditioning)) {
    const InfoState& info = tree.info_state(u);
    const auto probs = ActionProbs(tree, profile, u);
    InfoStateValues entry;
    entry.info_state = u;
    entry.own_reach = reach.own[info.members.front()];
    double weighted_value = 0.0;
    std::vector<double> weighted_q(info.num_actions(), 0.0);
    for (int s : info.members) {
      const double w = reach.total[s];
      entry.reach += w;
      weighted_value += w * node_value[s];
      const Node& n = tree.node(s);
      for (std::size_t a = 0; a < n.edges.size(); ++a) {
        weighted_q[a] += w * node_value[n.edges[a].child];
      }
    }
    entry.q.assign(info.num_actions(), std::nullopt);
    entry.reachable = entry.reach > 0.0 && entry.own_reach > 0.0;
    if (entry.reachable) {
      entry.others_reach = entry.reach / entry.own_reach;
      entry.value = weighted_value / entry.reach;
      for (std::size_t a = 0; a < info.num_actions(); ++a) {
        if (probs[a] > 0.0) entry.q[a] = weighted_q[a] / entry.reach;
      }
    }
    table[u] = std::move(entry);
  }
  return table;
}

}  // namespace gamevar

#endif  // GAMEVAR_TRAVERSAL_HPP_
