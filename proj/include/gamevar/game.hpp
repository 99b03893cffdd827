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

#ifndef GAMEVAR_GAME_HPP_
#define GAMEVAR_GAME_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gamevar/errors.hpp"
#include "gamevar/player.hpp"

namespace gamevar {

// Tolerance on the sum of an input probability vector.
inline constexpr double kProbabilityTolerance = 1e-12;

enum class NodeKind { kDecision, kChance, kTerminal };

struct Edge {
  std::string action;
  std::int64_t child_id = 0;
  int child = -1;  // index into GameTree::nodes(), -1 when dangling

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Node {
  std::int64_t id = 0;
  NodeKind kind = NodeKind::kTerminal;
  int player = 0;                // kDecision only
  std::string info_state_name;   // kDecision only
  std::vector<double> chance_probs;  // kChance only, aligned with edges
  std::vector<double> rewards;   // kTerminal only
  std::vector<Edge> edges;

  // Derived.
  int parent = -1;
  int info_state = -1;
  int depth = 0;

  friend bool operator==(const Node&, const Node&) = default;
};

// A set of nodes its owner cannot tell apart. Chance nodes each get a
// singleton info state named "chance:<id>".
struct InfoState {
  std::string name;
  PlayerRef owner;
  std::vector<int> members;  // node indices, ascending id
  std::vector<std::string> actions;

  std::size_t num_actions() const { return actions.size(); }
  friend bool operator==(const InfoState&, const InfoState&) = default;
};

// Rescales an accepted distribution to sum to one. Sums already within
// rounding noise of one are left untouched so that serialized values
// survive a round trip bit-exactly.
inline void Renormalize(std::vector<double>& probs) {
  double sum = 0.0;
  for (double p : probs) sum += p;
  const double noise = 8.0 * 2.220446049250313e-16 *
                       static_cast<double>(probs.size() + 1);
  if (std::fabs(sum - 1.0) <= noise) return;
  for (double& p : probs) p /= sum;
}

inline std::string ChanceInfoStateName(std::int64_t node_id) {
  return "chance:" + std::to_string(node_id);
}

struct Diagnostic {
  enum class Code {
    kBadPlayerCount,
    kMissingRoot,
    kUnknownRoot,
    kDuplicateNodeId,
    kDanglingEdge,
    kBadPlayer,
    kNotATree,
    kUnreachable,
    kRewardArity,
    kNonFiniteReward,
    kEdgeCount,
    kDuplicateAction,
    kChanceDistribution,
    kChanceActionMismatch,
    kBadName,
    kInfoStateOwner,
    kInfoStateActions,
    kPerfectRecall,
  };

  Code code;
  std::string message;
  std::vector<std::int64_t> nodes;
  std::vector<std::string> info_states;
};

inline std::string_view CodeName(Diagnostic::Code code) {
  using C = Diagnostic::Code;
  switch (code) {
    case C::kBadPlayerCount: return "bad-player-count";
    case C::kMissingRoot: return "missing-root";
    case C::kUnknownRoot: return "unknown-root";
    case C::kDuplicateNodeId: return "duplicate-node-id";
    case C::kDanglingEdge: return "dangling-edge";
    case C::kBadPlayer: return "bad-player";
    case C::kNotATree: return "not-a-tree";
    case C::kUnreachable: return "unreachable-node";
    case C::kRewardArity: return "reward-arity";
    case C::kNonFiniteReward: return "non-finite-reward";
    case C::kEdgeCount: return "edge-count";
    case C::kDuplicateAction: return "duplicate-action";
    case C::kChanceDistribution: return "chance-distribution";
    case C::kChanceActionMismatch: return "chance-action-mismatch";
    case C::kBadName: return "bad-name";
    case C::kInfoStateOwner: return "info-state-owner";
    case C::kInfoStateActions: return "info-state-actions";
    case C::kPerfectRecall: return "perfect-recall";
  }
  return "unknown";
}

inline std::string ToString(const Diagnostic& d) {
  return std::string(CodeName(d.code)) + ": " + d.message;
}

class GameError : public Error {
 public:
  explicit GameError(std::vector<Diagnostic> diagnostics)
      : Error(Summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string Summarize(const std::vector<Diagnostic>& diagnostics) {
    std::string out = "invalid game";
    for (const Diagnostic& d : diagnostics) out += "\n  " + ToString(d);
    return out;
  }
  std::vector<Diagnostic> diagnostics_;
};

// One (info state, action) pair taken by some player.
struct TraceStep {
  int info_state = -1;
  int action = -1;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

using Trace = std::vector<TraceStep>;

class GameBuilder;

// A finite extensive-form game. Immutable once built; construct through
// GameBuilder.
class GameTree {
 public:
  const std::string& name() const { return name_; }
  int player_count() const { return player_count_; }

  std::span<const Node> nodes() const { return nodes_; }
  const Node& node(int index) const { return nodes_.at(index); }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int root() const { return root_; }
  std::optional<std::int64_t> root_id() const { return root_id_; }

  std::span<const InfoState> info_states() const { return info_states_; }
  const InfoState& info_state(int index) const {
    return info_states_.at(index);
  }
  int num_info_states() const { return static_cast<int>(info_states_.size()); }

  std::optional<int> FindNode(std::int64_t id) const {
    auto it = std::lower_bound(
        nodes_.begin(), nodes_.end(), id,
        [](const Node& n, std::int64_t key) { return n.id < key; });
    if (it == nodes_.end() || it->id != id) return std::nullopt;
    return static_cast<int>(it - nodes_.begin());
  }

  std::optional<int> FindInfoState(std::string_view name) const {
    auto it = info_state_index_.find(std::string(name));
    if (it == info_state_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<int> FindAction(int info_state,
                                std::string_view action) const {
    const auto& actions = info_states_.at(info_state).actions;
    for (std::size_t a = 0; a < actions.size(); ++a) {
      if (actions[a] == action) return static_cast<int>(a);
    }
    return std::nullopt;
  }

  PlayerRef Owner(int node_index) const {
    const Node& n = nodes_.at(node_index);
    return n.kind == NodeKind::kChance ? PlayerRef::Chance()
                                       : PlayerRef::Player(n.player);
  }

  // Info states owned by `player`, in canonical (index) order.
  std::vector<int> InfoStatesOf(PlayerRef player) const {
    std::vector<int> out;
    for (int u = 0; u < num_info_states(); ++u) {
      if (info_states_[u].owner == player) out.push_back(u);
    }
    return out;
  }

  // Copy of this game with every reward r replaced by fn(r).
  GameTree MapRewards(const std::function<double(double)>& fn) const {
    GameTree copy = *this;
    for (Node& n : copy.nodes_) {
      for (double& r : n.rewards) r = fn(r);
    }
    return copy;
  }

  // Structural equality ignores derived fields that follow from the rest.
  friend bool operator==(const GameTree& a, const GameTree& b) {
    return a.name_ == b.name_ && a.player_count_ == b.player_count_ &&
           a.root_id_ == b.root_id_ && a.nodes_ == b.nodes_ &&
           a.info_states_ == b.info_states_;
  }

 private:
  friend class GameBuilder;
  friend std::vector<Diagnostic> ValidateGame(const GameTree& tree);

  std::string name_;
  int player_count_ = 0;
  std::vector<Node> nodes_;
  std::optional<std::int64_t> root_id_;
  int root_ = -1;
  std::vector<InfoState> info_states_;
  std::map<std::string, int> info_state_index_;
  // Problems found while assembling; reported by ValidateGame.
  std::vector<Diagnostic> build_issues_;
  bool structurally_sound_ = false;
};

std::vector<Diagnostic> ValidateGame(const GameTree& tree);

// Assembles a GameTree from node, edge and root declarations given in any
// order. Declaration errors are collected rather than thrown so that
// BuildUnchecked() can produce deliberately broken trees for diagnostics.
class GameBuilder {
 public:
  GameBuilder(std::string name, int player_count)
      : name_(std::move(name)), player_count_(player_count) {}

  static GameBuilder From(const GameTree& tree) {
    GameBuilder b(tree.name(), tree.player_count());
    for (const Node& n : tree.nodes()) {
      switch (n.kind) {
        case NodeKind::kDecision:
          b.Decision(n.id, n.player, n.info_state_name);
          break;
        case NodeKind::kChance: {
          std::vector<std::pair<std::string, double>> outcomes;
          const std::size_t k = std::min(n.edges.size(), n.chance_probs.size());
          for (std::size_t a = 0; a < k; ++a) {
            outcomes.emplace_back(n.edges[a].action, n.chance_probs[a]);
          }
          b.Chance(n.id, std::move(outcomes));
          break;
        }
        case NodeKind::kTerminal:
          b.Leaf(n.id, n.rewards);
          break;
      }
      for (const Edge& e : n.edges) b.AddEdge(n.id, e.action, e.child_id);
    }
    if (tree.root_id()) b.Root(*tree.root_id());
    return b;
  }

  GameBuilder& Decision(std::int64_t id, int player, std::string info_state) {
    Decl d;
    d.node.id = id;
    d.node.kind = NodeKind::kDecision;
    d.node.player = player;
    d.node.info_state_name = std::move(info_state);
    return Declare(std::move(d));
  }

  GameBuilder& Chance(std::int64_t id,
                      std::vector<std::pair<std::string, double>> outcomes) {
    Decl d;
    d.node.id = id;
    d.node.kind = NodeKind::kChance;
    d.chance_outcomes = std::move(outcomes);
    return Declare(std::move(d));
  }

  GameBuilder& Leaf(std::int64_t id, std::vector<double> rewards) {
    Decl d;
    d.node.id = id;
    d.node.kind = NodeKind::kTerminal;
    d.node.rewards = std::move(rewards);
    return Declare(std::move(d));
  }

  GameBuilder& AddEdge(std::int64_t parent, std::string action,
                       std::int64_t child) {
    edges_.push_back({parent, std::move(action), child});
    return *this;
  }

  GameBuilder& Root(std::int64_t id) {
    root_ = id;
    return *this;
  }

  // Replaces the info-state name of an existing decision node.
  GameBuilder& SetInfoState(std::int64_t id, std::string info_state) {
    for (Decl& d : decls_) {
      if (d.node.id == id) d.node.info_state_name = info_state;
    }
    return *this;
  }

  GameTree BuildUnchecked() const;

  // Throws GameError unless every invariant holds. Chance distributions
  // that pass the tolerance check are renormalized exactly.
  GameTree Build() const {
    GameTree tree = BuildUnchecked();
    std::vector<Diagnostic> diagnostics = ValidateGame(tree);
    if (!diagnostics.empty()) throw GameError(std::move(diagnostics));
    for (Node& n : tree.nodes_) {
      if (n.kind == NodeKind::kChance) Renormalize(n.chance_probs);
    }
    return tree;
  }

 private:
  struct Decl {
    Node node;
    std::vector<std::pair<std::string, double>> chance_outcomes;
  };
  struct PendingEdge {
    std::int64_t parent;
    std::string action;
    std::int64_t child;
  };

  GameBuilder& Declare(Decl d) {
    decls_.push_back(std::move(d));
    return *this;
  }

  std::string name_;
  int player_count_;
  std::vector<Decl> decls_;
  std::vector<PendingEdge> edges_;
  std::optional<std::int64_t> root_;
};

namespace internal {

inline bool ValidName(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (c <= ' ' || c == ':' || c == '=' || c == '#' || c == '"' || c == 0x7f) {
      return false;
    }
  }
  return true;
}

}  // namespace internal

inline GameTree GameBuilder::BuildUnchecked() const {
  using Code = Diagnostic::Code;
  GameTree tree;
  tree.name_ = name_;
  tree.player_count_ = player_count_;
  tree.root_id_ = root_;
  auto& issues = tree.build_issues_;

  if (player_count_ < 1) {
    issues.push_back({Code::kBadPlayerCount,
                      "player count must be at least 1, got " +
                          std::to_string(player_count_),
                      {},
                      {}});
  }

  // Nodes sorted by id; duplicates keep the first declaration.
  std::vector<const Decl*> sorted;
  sorted.reserve(decls_.size());
  for (const Decl& d : decls_) sorted.push_back(&d);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Decl* a, const Decl* b) {
                     return a->node.id < b->node.id;
                   });
  std::vector<const Decl*> unique;
  for (const Decl* d : sorted) {
    if (!unique.empty() && unique.back()->node.id == d->node.id) {
      issues.push_back({Code::kDuplicateNodeId,
                        "node id " + std::to_string(d->node.id) +
                            " declared more than once",
                        {d->node.id},
                        {}});
      continue;
    }
    unique.push_back(d);
  }
  for (const Decl* d : unique) tree.nodes_.push_back(d->node);

  for (const PendingEdge& e : edges_) {
    auto parent = tree.FindNode(e.parent);
    if (!parent) {
      issues.push_back({Code::kDanglingEdge,
                        "edge '" + e.action + "' leaves unknown node " +
                            std::to_string(e.parent),
                        {e.parent},
                        {}});
      continue;
    }
    Edge edge{e.action, e.child, -1};
    if (auto child = tree.FindNode(e.child)) {
      edge.child = *child;
    } else {
      issues.push_back({Code::kDanglingEdge,
                        "edge '" + e.action + "' from node " +
                            std::to_string(e.parent) +
                            " points to unknown node " +
                            std::to_string(e.child),
                        {e.parent, e.child},
                        {}});
    }
    tree.nodes_[*parent].edges.push_back(std::move(edge));
  }

  // Chance edges follow declaration order and carry their probabilities.
  for (std::size_t i = 0; i < unique.size(); ++i) {
    Node& n = tree.nodes_[i];
    if (n.kind != NodeKind::kChance) continue;
    const auto& outcomes = unique[i]->chance_outcomes;
    std::vector<Edge> ordered;
    std::vector<bool> used(n.edges.size(), false);
    for (const auto& [action, prob] : outcomes) {
      auto it = std::find_if(n.edges.begin(), n.edges.end(),
                             [&](const Edge& e) { return e.action == action; });
      if (it == n.edges.end()) {
        issues.push_back({Code::kChanceActionMismatch,
                          "chance node " + std::to_string(n.id) +
                              " declares outcome '" + action +
                              "' with no edge",
                          {n.id},
                          {}});
        continue;
      }
      used[it - n.edges.begin()] = true;
      ordered.push_back(*it);
      n.chance_probs.push_back(prob);
    }
    for (std::size_t e = 0; e < n.edges.size(); ++e) {
      if (used[e]) continue;
      issues.push_back({Code::kChanceActionMismatch,
                        "chance node " + std::to_string(n.id) +
                            " has edge '" + n.edges[e].action +
                            "' without a declared probability",
                        {n.id},
                        {}});
    }
    // Declared outcomes are validated even if some edges are missing.
    if (ordered.size() == n.edges.size()) {
      n.edges = std::move(ordered);
    } else {
      n.chance_probs.clear();
      for (const auto& outcome : outcomes) {
        n.chance_probs.push_back(outcome.second);
      }
    }
  }

  if (!root_) {
    issues.push_back({Code::kMissingRoot, "missing root", {}, {}});
  } else if (auto r = tree.FindNode(*root_)) {
    tree.root_ = *r;
  } else {
    issues.push_back({Code::kUnknownRoot,
                      "root refers to unknown node " + std::to_string(*root_),
                      {*root_},
                      {}});
  }

  // Parents and tree shape.
  std::vector<int> parent_count(tree.nodes_.size(), 0);
  for (int i = 0; i < tree.num_nodes(); ++i) {
    for (const Edge& e : tree.nodes_[i].edges) {
      if (e.child < 0) continue;
      if (++parent_count[e.child] == 1) tree.nodes_[e.child].parent = i;
    }
  }
  bool sound = tree.root_ >= 0 && issues.empty();
  for (int i = 0; i < tree.num_nodes(); ++i) {
    const Node& n = tree.nodes_[i];
    if (parent_count[i] > 1) {
      issues.push_back({Code::kNotATree,
                        "node " + std::to_string(n.id) + " has " +
                            std::to_string(parent_count[i]) + " parents",
                        {n.id},
                        {}});
      sound = false;
    }
    if (i == tree.root_ && parent_count[i] > 0) {
      issues.push_back({Code::kNotATree,
                        "root node " + std::to_string(n.id) + " has a parent",
                        {n.id},
                        {}});
      sound = false;
    }
  }
  if (tree.root_ >= 0) {
    std::vector<bool> seen(tree.nodes_.size(), false);
    std::vector<int> stack{tree.root_};
    seen[tree.root_] = true;
    while (!stack.empty()) {
      const int at = stack.back();
      stack.pop_back();
      for (const Edge& e : tree.nodes_[at].edges) {
        if (e.child < 0 || seen[e.child]) continue;
        seen[e.child] = true;
        tree.nodes_[e.child].depth = tree.nodes_[at].depth + 1;
        stack.push_back(e.child);
      }
    }
    for (int i = 0; i < tree.num_nodes(); ++i) {
      if (seen[i]) continue;
      issues.push_back({Code::kUnreachable,
                        "node " + std::to_string(tree.nodes_[i].id) +
                            " is not reachable from the root",
                        {tree.nodes_[i].id},
                        {}});
      sound = false;
    }
  }
  tree.structurally_sound_ = sound;

  // Info states: decision nodes grouped by name, chance nodes singleton.
  // Action order is the edge order of the lowest-id member; other members
  // are reordered to match when their label sets agree.
  for (int i = 0; i < tree.num_nodes(); ++i) {
    Node& n = tree.nodes_[i];
    if (n.kind == NodeKind::kTerminal) continue;
    const std::string name = n.kind == NodeKind::kChance
                                 ? ChanceInfoStateName(n.id)
                                 : n.info_state_name;
    auto [it, inserted] = tree.info_state_index_.try_emplace(
        name, static_cast<int>(tree.info_states_.size()));
    if (inserted) {
      InfoState u;
      u.name = name;
      u.owner = tree.Owner(i);
      for (const Edge& e : n.edges) u.actions.push_back(e.action);
      tree.info_states_.push_back(std::move(u));
    } else if (n.kind == NodeKind::kChance ||
               tree.info_states_[it->second].owner.is_chance()) {
      issues.push_back({Code::kBadName,
                        "info state name '" + name +
                            "' collides with a chance node",
                        {n.id},
                        {name}});
    }
    InfoState& u = tree.info_states_[it->second];
    u.members.push_back(i);
    n.info_state = it->second;
    if (!inserted && n.edges.size() == u.actions.size()) {
      std::vector<Edge> ordered;
      for (const std::string& a : u.actions) {
        auto e = std::find_if(n.edges.begin(), n.edges.end(),
                              [&](const Edge& x) { return x.action == a; });
        if (e == n.edges.end()) break;
        ordered.push_back(*e);
      }
      if (ordered.size() == n.edges.size()) n.edges = std::move(ordered);
    }
  }
  return tree;
}

// Owner-visible history of every player along the root path to `node`,
// indexed by PlayerRef::slot(). Chance histories list chance decisions.
inline std::vector<Trace> OwnerHistory(const GameTree& tree, int node) {
  if (node < 0 || node >= tree.num_nodes()) {
    throw InvalidArgument("unknown node index " + std::to_string(node));
  }
  std::vector<Trace> history(static_cast<std::size_t>(tree.player_count()) + 1);
  int child = node;
  int at = tree.node(node).parent;
  while (at >= 0) {
    const Node& n = tree.node(at);
    int action = -1;
    for (std::size_t a = 0; a < n.edges.size(); ++a) {
      if (n.edges[a].child == child) action = static_cast<int>(a);
    }
    history[tree.Owner(at).slot()].push_back({n.info_state, action});
    child = at;
    at = n.parent;
  }
  for (Trace& t : history) std::reverse(t.begin(), t.end());
  return history;
}

inline std::vector<Trace> OwnerHistoryById(const GameTree& tree,
                                           std::int64_t id) {
  auto index = tree.FindNode(id);
  if (!index) throw InvalidArgument("unknown node id " + std::to_string(id));
  return OwnerHistory(tree, *index);
}

// Checks every structural invariant. Returns an empty list iff the tree
// is a valid finite perfect-recall game.
inline std::vector<Diagnostic> ValidateGame(const GameTree& tree) {
  using Code = Diagnostic::Code;
  std::vector<Diagnostic> out = tree.build_issues_;
  const int players = tree.player_count();

  for (const Node& n : tree.nodes()) {
    const std::string id = std::to_string(n.id);
    switch (n.kind) {
      case NodeKind::kTerminal:
        if (!n.edges.empty()) {
          out.push_back({Code::kEdgeCount,
                         "leaf " + id + " has outgoing edges", {n.id}, {}});
        }
        if (static_cast<int>(n.rewards.size()) != players) {
          out.push_back({Code::kRewardArity,
                         "leaf " + id + " has " +
                             std::to_string(n.rewards.size()) +
                             " rewards, expected " + std::to_string(players),
                         {n.id},
                         {}});
        }
        for (double r : n.rewards) {
          if (!std::isfinite(r)) {
            out.push_back({Code::kNonFiniteReward,
                           "leaf " + id + " has a non-finite reward",
                           {n.id},
                           {}});
            break;
          }
        }
        break;
      case NodeKind::kDecision:
        if (n.player < 0 || n.player >= players) {
          out.push_back({Code::kBadPlayer,
                         "node " + id + " belongs to unknown player " +
                             std::to_string(n.player),
                         {n.id},
                         {}});
        }
        if (!internal::ValidName(n.info_state_name)) {
          out.push_back({Code::kBadName,
                         "node " + id + " has invalid info state name '" +
                             n.info_state_name + "'",
                         {n.id},
                         {n.info_state_name}});
        }
        [[fallthrough]];
      case NodeKind::kChance:
        if (n.edges.empty()) {
          out.push_back({Code::kEdgeCount,
                         "non-terminal node " + id + " has no edges",
                         {n.id},
                         {}});
        }
        break;
    }
    for (std::size_t a = 0; a < n.edges.size(); ++a) {
      if (!internal::ValidName(n.edges[a].action)) {
        out.push_back({Code::kBadName,
                       "node " + id + " has invalid action label '" +
                           n.edges[a].action + "'",
                       {n.id},
                       {}});
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (n.edges[a].action == n.edges[b].action) {
          out.push_back({Code::kDuplicateAction,
                         "node " + id + " repeats action '" +
                             n.edges[a].action + "'",
                         {n.id},
                         {}});
        }
      }
    }
    if (n.kind == NodeKind::kChance) {
      double sum = 0.0;
      bool bad = false;
      for (double p : n.chance_probs) {
        if (!std::isfinite(p) || p < 0.0) bad = true;
        sum += p;
      }
      if (bad || !(std::fabs(sum - 1.0) <= kProbabilityTolerance)) {
        out.push_back({Code::kChanceDistribution,
                       "chance node " + id +
                           " distribution is not normalized (sum " +
                           std::to_string(sum) + ")",
                       {n.id},
                       {ChanceInfoStateName(n.id)}});
      }
    }
  }

  for (const InfoState& u : tree.info_states()) {
    if (u.owner.is_chance()) continue;
    const Node& first = tree.node(u.members.front());
    for (std::size_t m = 1; m < u.members.size(); ++m) {
      const Node& other = tree.node(u.members[m]);
      if (other.player != first.player) {
        out.push_back({Code::kInfoStateOwner,
                       "info state '" + u.name + "' mixes players " +
                           std::to_string(first.player) + " and " +
                           std::to_string(other.player),
                       {first.id, other.id},
                       {u.name}});
      }
      bool same = other.edges.size() == first.edges.size();
      for (std::size_t a = 0; same && a < other.edges.size(); ++a) {
        same = other.edges[a].action == u.actions[a];
      }
      if (!same) {
        out.push_back({Code::kInfoStateActions,
                       "info state '" + u.name + "': node " +
                           std::to_string(other.id) +
                           " has a different action set than node " +
                           std::to_string(first.id),
                       {first.id, other.id},
                       {u.name}});
      }
    }
  }

  // Perfect recall needs a sound tree to walk.
  if (!tree.structurally_sound_ || !out.empty()) return out;
  for (const InfoState& u : tree.info_states()) {
    if (u.owner.is_chance() || u.members.size() < 2) continue;
    const std::size_t slot = u.owner.slot();
    const Trace reference = OwnerHistory(tree, u.members.front())[slot];
    for (std::size_t m = 1; m < u.members.size(); ++m) {
      if (OwnerHistory(tree, u.members[m])[slot] != reference) {
        out.push_back({Code::kPerfectRecall,
                       "info state '" + u.name + "': nodes " +
                           std::to_string(tree.node(u.members.front()).id) +
                           " and " + std::to_string(tree.node(u.members[m]).id) +
                           " have different histories for player " +
                           u.owner.ToString(),
                       {tree.node(u.members.front()).id,
                        tree.node(u.members[m]).id},
                       {u.name}});
      }
    }
  }
  return out;
}

}  // namespace gamevar

#endif  // GAMEVAR_GAME_HPP_
