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

#ifndef GAMEVAR_BUILTINS_HPP_
#define GAMEVAR_BUILTINS_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gamevar/errors.hpp"
#include "gamevar/game.hpp"

namespace gamevar {

namespace builtin_internal {

// Two-player zero-sum reward pair; avoids writing -0.
inline std::vector<double> ZeroSum(double r) { return {r, r == 0.0 ? 0.0 : -r}; }

inline constexpr std::array<const char*, 3> kMoves = {"rock", "paper", "scissors"};

// Pre-order id allocation.
struct Ids {
  std::int64_t next = 0;
  std::int64_t operator()() { return next++; }
};

}  // namespace builtin_internal

// Payoff to the first player; moves are 0 = rock, 1 = paper, 2 = scissors.
inline int RpsPayoff(int mine, int theirs) {
  static constexpr int kTable[3][3] = {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
  return kTable[mine][theirs];
}

// The two-player example game: a fair chance root; on the left, player 0
// moves and player 1 answers without seeing that move; on the right, a
// second fair coin decides. Only player 0's rewards (0, -1, 1, 0, 1, -1
// left to right) are fixed by the example; player 1 gets their negation.
inline GameTree BuildFigure1() {
  using builtin_internal::ZeroSum;
  GameBuilder b("figure1", 2);
  b.Chance(0, {{"left", 0.5}, {"right", 0.5}});
  b.Decision(1, 0, "u1");
  b.Decision(2, 1, "u2");
  b.Leaf(3, ZeroSum(0));
  b.Leaf(4, ZeroSum(-1));
  b.Decision(5, 1, "u2");
  b.Leaf(6, ZeroSum(1));
  b.Leaf(7, ZeroSum(0));
  b.Chance(8, {{"left", 0.5}, {"right", 0.5}});
  b.Leaf(9, ZeroSum(1));
  b.Leaf(10, ZeroSum(-1));
  b.AddEdge(0, "left", 1).AddEdge(0, "right", 8);
  b.AddEdge(1, "left", 2).AddEdge(1, "right", 5);
  b.AddEdge(2, "left", 3).AddEdge(2, "right", 4);
  b.AddEdge(5, "left", 6).AddEdge(5, "right", 7);
  b.AddEdge(8, "left", 9).AddEdge(8, "right", 10);
  b.Root(0);
  return b.Build();
}

// Rock paper scissors, player 0 first; player 1's single info state hides
// player 0's move.
inline GameTree BuildRps() {
  using namespace builtin_internal;
  GameBuilder b("rps", 2);
  Ids id;
  const std::int64_t root = id();
  b.Decision(root, 0, "move1");
  for (int a1 = 0; a1 < 3; ++a1) {
    const std::int64_t reply = id();
    b.Decision(reply, 1, "move2");
    b.AddEdge(root, kMoves[a1], reply);
    for (int a2 = 0; a2 < 3; ++a2) {
      const std::int64_t leaf = id();
      b.Leaf(leaf, ZeroSum(RpsPayoff(a1, a2)));
      b.AddEdge(reply, kMoves[a2], leaf);
    }
  }
  b.Root(root);
  return b.Build();
}

// Rock paper scissors against the chance player. Chance moves first and
// player 0 cannot see it, so chance contributes a single action variable.
// One-player game.
inline GameTree BuildChanceRps(std::array<double, 3> chance = {1.0 / 3, 1.0 / 3,
                                                               1.0 / 3}) {
  using namespace builtin_internal;
  GameBuilder b("chance-rps", 1);
  Ids id;
  const std::int64_t root = id();
  b.Chance(root, {{kMoves[0], chance[0]}, {kMoves[1], chance[1]}, {kMoves[2], chance[2]}});
  for (int c = 0; c < 3; ++c) {
    const std::int64_t player = id();
    b.Decision(player, 0, "move1");
    b.AddEdge(root, kMoves[c], player);
    for (int a = 0; a < 3; ++a) {
      const std::int64_t leaf = id();
      b.Leaf(leaf, {static_cast<double>(RpsPayoff(a, c))});
      b.AddEdge(player, kMoves[a], leaf);
    }
  }
  b.Root(root);
  return b.Build();
}

inline std::string SkillRpsAction(int number, int move) {
  return "n" + std::to_string(number) + "_" + builtin_internal::kMoves[move];
}

// SkillRPS(n, c, alpha). Chance node W ("play" / "flip" with probability
// alpha) comes first; "flip" leads to a fair coin Z paying -1 or +1 to
// player 0. "play" leads to both players picking (number, move) from
// n x 3 joint actions with hidden moves; player 0 is paid
// sign(N1 - N2 + c * RPS(A1, A2)).
inline GameTree BuildSkillRps(int n, int c, double alpha) {
  using namespace builtin_internal;
  if (n < 1) throw InvalidArgument("SkillRPS needs n >= 1");
  if (c < 0) throw InvalidArgument("SkillRPS needs c >= 0");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("SkillRPS needs alpha in [0, 1]");
  }
  GameBuilder b("skill-rps", 2);
  Ids id;
  const std::int64_t w = id();
  b.Chance(w, {{"play", 1.0 - alpha}, {"flip", alpha}});
  const std::int64_t first = id();
  b.Decision(first, 0, "pick1");
  b.AddEdge(w, "play", first);
  for (int n1 = 1; n1 <= n; ++n1) {
    for (int a1 = 0; a1 < 3; ++a1) {
      const std::int64_t second = id();
      b.Decision(second, 1, "pick2");
      b.AddEdge(first, SkillRpsAction(n1, a1), second);
      for (int n2 = 1; n2 <= n; ++n2) {
        for (int a2 = 0; a2 < 3; ++a2) {
          const int score = n1 - n2 + c * RpsPayoff(a1, a2);
          const std::int64_t leaf = id();
          b.Leaf(leaf, ZeroSum((score > 0) - (score < 0)));
          b.AddEdge(second, SkillRpsAction(n2, a2), leaf);
        }
      }
    }
  }
  const std::int64_t z = id();
  b.Chance(z, {{"tails", 0.5}, {"heads", 0.5}});
  b.AddEdge(w, "flip", z);
  const std::int64_t tails = id();
  const std::int64_t heads = id();
  b.Leaf(tails, ZeroSum(-1));
  b.Leaf(heads, ZeroSum(1));
  b.AddEdge(z, "tails", tails).AddEdge(z, "heads", heads);
  b.Root(w);
  return b.Build();
}

// Three-card Kuhn poker with antes of 1 and a single bet of 1.
inline GameTree BuildKuhnPoker() {
  using builtin_internal::ZeroSum;
  static constexpr std::array<char, 3> kCards = {'J', 'Q', 'K'};
  GameBuilder b("kuhn", 2);
  builtin_internal::Ids id;
  const std::int64_t deal = id();
  std::vector<std::pair<std::string, double>> deals;
  for (int c1 = 0; c1 < 3; ++c1) {
    for (int c2 = 0; c2 < 3; ++c2) {
      if (c1 != c2) deals.emplace_back(std::string{kCards[c1], kCards[c2]}, 1.0 / 6);
    }
  }
  b.Chance(deal, deals);
  for (const auto& [label, prob] : deals) {
    const std::string card1(1, label[0]);
    const std::string card2(1, label[1]);
    const double showdown = label[0] == 'K' || (label[0] == 'Q' && label[1] == 'J')
                                ? 1.0
                                : -1.0;
    const std::int64_t open = id();
    b.Decision(open, 0, "p1_" + card1);
    b.AddEdge(deal, label, open);

    const std::int64_t after_check = id();
    b.Decision(after_check, 1, "p2_" + card2 + "_c");
    b.AddEdge(open, "check", after_check);
    const std::int64_t check_check = id();
    b.Leaf(check_check, ZeroSum(showdown));
    b.AddEdge(after_check, "check", check_check);
    const std::int64_t facing_bet = id();
    b.Decision(facing_bet, 0, "p1_" + card1 + "_cb");
    b.AddEdge(after_check, "bet", facing_bet);
    const std::int64_t fold1 = id();
    b.Leaf(fold1, ZeroSum(-1));
    const std::int64_t call1 = id();
    b.Leaf(call1, ZeroSum(2 * showdown));
    b.AddEdge(facing_bet, "fold", fold1).AddEdge(facing_bet, "call", call1);

    const std::int64_t after_bet = id();
    b.Decision(after_bet, 1, "p2_" + card2 + "_b");
    b.AddEdge(open, "bet", after_bet);
    const std::int64_t fold2 = id();
    b.Leaf(fold2, ZeroSum(1));
    const std::int64_t call2 = id();
    b.Leaf(call2, ZeroSum(2 * showdown));
    b.AddEdge(after_bet, "fold", fold2).AddEdge(after_bet, "call", call2);
  }
  b.Root(deal);
  return b.Build();
}

inline std::vector<std::string> BuiltinNames() {
  return {"figure1", "rps", "chance-rps", "skill-rps:n,c,alpha", "kuhn"};
}

// Resolves "figure1", "rps", "chance-rps", "kuhn" or "skill-rps:n,c,alpha".
inline std::optional<GameTree> BuiltinByName(std::string_view name) {
  if (name == "figure1") return BuildFigure1();
  if (name == "rps") return BuildRps();
  if (name == "chance-rps") return BuildChanceRps();
  if (name == "kuhn") return BuildKuhnPoker();
  constexpr std::string_view kSkill = "skill-rps:";
  if (name.starts_with(kSkill)) {
    const std::string args(name.substr(kSkill.size()));
    int n = 0;
    int c = 0;
    double alpha = 0.0;
    char extra = 0;
    if (std::sscanf(args.c_str(), "%d,%d,%lf%c", &n, &c, &alpha, &extra) != 3) {
      throw InvalidArgument("expected skill-rps:n,c,alpha, got '" +
                            std::string(name) + "'");
    }
    return BuildSkillRps(n, c, alpha);
  }
  return std::nullopt;
}

}  // namespace gamevar

#endif  // GAMEVAR_BUILTINS_HPP_
