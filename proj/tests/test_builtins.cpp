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

#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

namespace gamevar {
namespace {

std::vector<double> LeafRewardsLeftToRight(const GameTree& tree, int player) {
  std::vector<double> out;
  for (int n : PreOrder(tree)) {
    if (tree.node(n).kind == NodeKind::kTerminal) out.push_back(tree.node(n).rewards[player]);
  }
  return out;
}

TEST(Figure1, Structure) {
  const GameTree tree = BuildFigure1();
  EXPECT_EQ(LeafRewardsLeftToRight(tree, 0), (std::vector<double>{0, -1, 1, 0, 1, -1}));
  EXPECT_EQ(tree.InfoStatesOf(PlayerRef::Player(1)).size(), 1u);
  EXPECT_EQ(tree.node(tree.root()).chance_probs, (std::vector<double>{0.5, 0.5}));
  for (int n : PreOrder(tree)) {
    const Node& node = tree.node(n);
    if (node.kind == NodeKind::kTerminal) EXPECT_EQ(node.rewards[0] + node.rewards[1], 0.0);
  }
}

TEST(Rps, Payoffs) {
  EXPECT_EQ(RpsPayoff(0, 1), -1);  // rock vs paper
  EXPECT_EQ(RpsPayoff(1, 0), 1);
  EXPECT_EQ(RpsPayoff(2, 1), 1);   // scissors vs paper
  for (int a = 0; a < 3; ++a) EXPECT_EQ(RpsPayoff(a, a), 0);
  const GameTree tree = BuildRps();
  EXPECT_DOUBLE_EQ(TotalVariance(tree, PolicyProfile::Uniform(tree), 0), 2.0 / 3.0);
}

TEST(ChanceRps, UniformMeanIsZero) {
  const GameTree tree = BuildChanceRps();
  EXPECT_EQ(tree.player_count(), 1);
  const OutcomeMoments m = ComputeOutcomeMoments(tree, PolicyProfile::Uniform(tree), 0);
  EXPECT_NEAR(m.mean, 0.0, 1e-15);
  const GameTree skewed = BuildChanceRps({1.0, 0.0, 0.0});
  EXPECT_TRUE(ValidateGame(skewed).empty());
}

TEST(SkillRps, Structure) {
  const GameTree tree = BuildSkillRps(3, 1, 0.25);
  for (int p = 0; p < 2; ++p) {
    const auto owned = tree.InfoStatesOf(PlayerRef::Player(p));
    ASSERT_EQ(owned.size(), 1u);
    EXPECT_EQ(tree.info_state(owned[0]).num_actions(), 9u);
  }
  EXPECT_TRUE(ValidateGame(BuildSkillRps(2, 0, 0.5)).empty());
  EXPECT_THROW(BuildSkillRps(0, 1, 0.5), InvalidArgument);
  EXPECT_THROW(BuildSkillRps(1, -1, 0.5), InvalidArgument);
  EXPECT_THROW(BuildSkillRps(1, 1, 1.5), InvalidArgument);
}

TEST(SkillRps, CoinFlipWhenAlphaIsOne) {
  const GameTree tree = BuildSkillRps(2, 1, 1.0);
  const PolicyProfile profile = RandomProfile(tree, 11);
  double plus = 0.0;
  double minus = 0.0;
  for (const auto& h : EnumerateTerminalHistories(tree, profile, PlayerRef::Chance())) {
    if (h.path.rewards[0] == 1.0) plus += h.reach;
    if (h.path.rewards[0] == -1.0) minus += h.reach;
  }
  EXPECT_DOUBLE_EQ(plus, 0.5);
  EXPECT_DOUBLE_EQ(minus, 0.5);
}

TEST(SkillRps, ClassicRpsSupport) {
  const GameTree tree = BuildSkillRps(1, 1, 0.0);
  std::set<double> support;
  for (const auto& h :
       EnumerateTerminalHistories(tree, PolicyProfile::Uniform(tree), PlayerRef::Chance())) {
    if (h.reach > 0.0) support.insert(h.path.rewards[0]);
  }
  EXPECT_EQ(support, (std::set<double>{-1.0, 0.0, 1.0}));
}

TEST(Kuhn, Structure) {
  const GameTree tree = BuildKuhnPoker();
  const Node& deal = tree.node(tree.root());
  EXPECT_EQ(deal.kind, NodeKind::kChance);
  EXPECT_EQ(deal.edges.size(), 6u);
  EXPECT_EQ(tree.InfoStatesOf(PlayerRef::Player(0)).size(), 6u);
  for (int n : PreOrder(tree)) {
    const Node& node = tree.node(n);
    if (node.kind != NodeKind::kTerminal) continue;
    EXPECT_EQ(node.rewards[0] + node.rewards[1], 0.0);
    const double r = std::fabs(node.rewards[0]);
    EXPECT_TRUE(r == 1.0 || r == 2.0);
  }
}

TEST(Kuhn, UniformVariance) {
  const GameTree tree = BuildKuhnPoker();
  const OutcomeMoments m = ComputeOutcomeMoments(tree, PolicyProfile::Uniform(tree), 0);
  EXPECT_NEAR(m.mean, 0.125, 1e-15);
  EXPECT_NEAR(TotalVariance(tree, PolicyProfile::Uniform(tree), 0), 135.0 / 64.0, 1e-12);
}

TEST(Builtins, ByName) {
  EXPECT_TRUE(BuiltinByName("figure1").has_value());
  EXPECT_TRUE(BuiltinByName("kuhn").has_value());
  const auto skill = BuiltinByName("skill-rps:2,1,0.5");
  ASSERT_TRUE(skill.has_value());
  EXPECT_EQ(*skill, BuildSkillRps(2, 1, 0.5));
  EXPECT_FALSE(BuiltinByName("nosuch").has_value());
  EXPECT_THROW(BuiltinByName("skill-rps:2,1"), InvalidArgument);
  EXPECT_THROW(BuiltinByName("skill-rps:0,1,0.5"), InvalidArgument);
}

}  // namespace
}  // namespace gamevar
