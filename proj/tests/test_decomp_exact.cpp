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

#include "test_util.hpp"

namespace gamevar {
namespace {

using testing::AllBuiltins;
using testing::AllConditioners;
using testing::RelNear;

double Contribution(const DecompositionReport& r, const std::string& name) {
  for (const auto& c : r.per_info_state) {
    if (c.info_state == name) return c.contribution;
  }
  ADD_FAILURE() << "no contribution for " << name;
  return 0.0;
}

TEST(TotalVariance, Examples) {
  const GameTree fig = BuildFigure1();
  EXPECT_DOUBLE_EQ(TotalVariance(fig, PolicyProfile::Uniform(fig), 0), 0.75);
  const GameTree rps = BuildRps();
  EXPECT_NEAR(TotalVariance(rps, PolicyProfile::Uniform(rps), 0), 2.0 / 3.0, 1e-15);
  const GameTree constant = fig.MapRewards([](double) { return 4.0; });
  EXPECT_EQ(TotalVariance(constant, PolicyProfile::Uniform(constant), 0), 0.0);
}

TEST(ExplainedVariance, Figure1Chance) {
  const GameTree tree = BuildFigure1();
  const auto r = ExplainedVariance(tree, PolicyProfile::Uniform(tree), 0, PlayerRef::Chance());
  EXPECT_DOUBLE_EQ(r.explained, 0.5);
  EXPECT_DOUBLE_EQ(r.residual, 0.25);
  EXPECT_DOUBLE_EQ(r.total_variance, 0.75);
  EXPECT_NEAR(r.explained_ratio, 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(Contribution(r, ChanceInfoStateName(0)), 0.0);
  EXPECT_DOUBLE_EQ(Contribution(r, ChanceInfoStateName(8)), 0.5);
}

TEST(ExplainedVariance, Figure1Player0) {
  const GameTree tree = BuildFigure1();
  const auto r = ExplainedVariance(tree, PolicyProfile::Uniform(tree), 0, PlayerRef::Player(0));
  EXPECT_DOUBLE_EQ(r.explained, 0.0625);
}

TEST(ExplainedVariance, ChanceRpsIsZero) {
  const GameTree tree = BuildChanceRps();
  const auto r = ExplainedVariance(tree, PolicyProfile::Uniform(tree), 0, PlayerRef::Chance());
  EXPECT_NEAR(r.explained, 0.0, 1e-12);
  EXPECT_NEAR(r.total_variance, 2.0 / 3.0, 1e-12);
}

TEST(ExplainedVariance, RejectsUnknownPlayers) {
  const GameTree tree = BuildFigure1();
  const PolicyProfile profile = PolicyProfile::Uniform(tree);
  EXPECT_THROW(ExplainedVariance(tree, profile, 5, PlayerRef::Chance()), InvalidArgument);
  EXPECT_THROW(ExplainedVariance(tree, profile, 0, PlayerRef::Player(2)), InvalidArgument);
}

TEST(ExplainedVariance, AffineEquivariance) {
  for (const auto& [name, tree] : AllBuiltins()) {
    const PolicyProfile profile = RandomProfile(tree, 17);
    for (PlayerRef cond : AllConditioners(tree)) {
      const auto base = ExplainedVariance(tree, profile, 0, cond);
      for (double k : {-2.0, 0.5, 3.0}) {
        for (double b : {-1.0, 7.0}) {
          const GameTree mapped = tree.MapRewards([=](double r) { return k * r + b; });
          const auto r = ExplainedVariance(mapped, profile, 0, cond);
          EXPECT_TRUE(RelNear(r.total_variance, k * k * base.total_variance, 1e-9)) << name;
          EXPECT_TRUE(RelNear(r.explained, k * k * base.explained, 1e-9)) << name;
          EXPECT_TRUE(RelNear(r.residual, k * k * base.residual, 1e-9)) << name;
          EXPECT_TRUE(RelNear(r.explained_ratio, base.explained_ratio, 1e-9)) << name;
        }
      }
    }
  }
}

TEST(ExplainedVariance, DeterministicConditionerExplainsNothing) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GameTree tree = RandomGame(seed);
    PolicyProfile profile = RandomProfile(tree, seed);
    for (int p = 0; p < tree.player_count(); ++p) {
      PolicyProfile det = profile;
      for (int u : tree.InfoStatesOf(PlayerRef::Player(p))) {
        std::vector<double> probs(tree.info_state(u).num_actions(), 0.0);
        probs[seed % probs.size()] = 1.0;
        det[p].Set(tree, u, probs);
      }
      EXPECT_NEAR(ExplainedVariance(tree, det, 0, PlayerRef::Player(p)).explained, 0.0, 1e-12);
    }
  }
}

TEST(ExplainedVariance, SingleActionConditionerExplainsNothing) {
  GameBuilder b("forced", 2);
  b.Decision(0, 0, "a").Chance(1, {{"x", 0.3}, {"y", 0.7}});
  b.Decision(2, 1, "b").Leaf(3, {1, -1}).Leaf(4, {-2, 2});
  b.Decision(5, 0, "c").Leaf(6, {3, -3});
  b.AddEdge(0, "go", 1).AddEdge(1, "x", 2).AddEdge(1, "y", 5);
  b.AddEdge(2, "l", 3).AddEdge(2, "r", 4).AddEdge(5, "only", 6).Root(0);
  const GameTree tree = b.Build();
  const auto r = ExplainedVariance(tree, PolicyProfile::Uniform(tree), 0, PlayerRef::Player(0));
  EXPECT_NEAR(r.explained, 0.0, 1e-12);
  EXPECT_GT(r.total_variance, 0.0);
}

TEST(ExplainedVariance, ContributionsNonnegativeAndLawOfTotalVariance) {
  int checked = 0;
  for (const auto& [name, tree] : AllBuiltins()) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const PolicyProfile profile = RandomProfile(tree, seed);
      for (PlayerRef cond : AllConditioners(tree)) {
        const auto r = ExplainedVariance(tree, profile, 0, cond);
        for (const auto& c : r.per_info_state) EXPECT_GE(c.contribution, -1e-12);
        EXPECT_TRUE(RelNear(r.explained + r.residual, r.total_variance, 1e-9));
        EXPECT_GE(r.residual, -1e-12);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Threeway, SkillRpsExamples) {
  const auto run = [](int n, int c, double alpha) {
    const GameTree tree = BuildSkillRps(n, c, alpha);
    return ThreewayDecompose(tree, CanonicalSkillRpsPopulation(tree, n));
  };
  const ThreeWayReport a = run(2, 0, 0.0);
  EXPECT_NEAR(a.skill, 0.5, 1e-12);
  EXPECT_NEAR(a.chance, 0.0, 1e-12);
  EXPECT_NEAR(a.remaining, 0.0, 1e-12);

  const ThreeWayReport b = run(3, 2, 1.0);
  EXPECT_NEAR(b.skill, 0.0, 1e-12);
  EXPECT_NEAR(b.chance, 1.0, 1e-12);
  EXPECT_NEAR(b.remaining, 0.0, 1e-12);

  const ThreeWayReport c = run(1, 1, 0.0);
  EXPECT_NEAR(c.skill, 0.0, 1e-12);
  EXPECT_NEAR(c.chance, 0.0, 1e-12);
  EXPECT_NEAR(c.remaining, 2.0 / 3.0, 1e-12);
}

TEST(Threeway, ComponentsSumToMixtureVariance) {
  for (int n : {1, 2, 3}) {
    for (int c : {0, 1, 4}) {
      for (double alpha : {0.0, 0.3, 1.0}) {
        const GameTree tree = BuildSkillRps(n, c, alpha);
        const ThreeWayReport r = ThreewayDecompose(tree, CanonicalSkillRpsPopulation(tree, n));
        EXPECT_GE(r.skill, -1e-12);
        EXPECT_GE(r.chance, -1e-12);
        EXPECT_GE(r.remaining, -1e-12);
        // The canonical population mixes to uniform play.
        const double total = TotalVariance(tree, PolicyProfile::Uniform(tree), 0);
        EXPECT_TRUE(RelNear(r.skill + r.chance + r.remaining, total, 1e-9));
        EXPECT_TRUE(RelNear(r.total, total, 1e-9));
        if (c == 0) EXPECT_TRUE(RelNear(total, (1 - alpha) * (1 - 1.0 / n) + alpha, 1e-9));
      }
    }
  }
}

TEST(Threeway, RejectsAsymmetricGamesAndCap) {
  const GameTree fig = BuildFigure1();
  RatedPopulation pop;
  pop.members.push_back({"a", 1.0, PolicyProfile::Uniform(fig)});
  EXPECT_NO_THROW(ThreewayDecompose(fig, pop));

  const GameTree chance_rps = BuildChanceRps();
  RatedPopulation single;
  single.members.push_back({"a", 1.0, PolicyProfile::Uniform(chance_rps)});
  EXPECT_THROW(ThreewayDecompose(chance_rps, single), AsymmetricGame);

  GameBuilder b("general-sum", 2);
  b.Decision(0, 0, "x").Leaf(1, {1.0, 1.0}).Leaf(2, {0.0, 0.0});
  b.AddEdge(0, "l", 1).AddEdge(0, "r", 2).Root(0);
  const GameTree general = b.Build();
  RatedPopulation gp;
  gp.members.push_back({"a", 1.0, PolicyProfile::Uniform(general)});
  EXPECT_THROW(ThreewayDecompose(general, gp), AsymmetricGame);

  const GameTree kuhn = BuildKuhnPoker();
  RatedPopulation kp;
  kp.members.push_back({"a", 1.0, PolicyProfile::Uniform(kuhn)});
  EXPECT_THROW(ThreewayDecompose(kuhn, kp, 5), CapExceeded);
}

}  // namespace
}  // namespace gamevar
