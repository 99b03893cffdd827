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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "test_util.hpp"

namespace gamevar {
namespace {

using testing::InfoStateIndex;

struct Scenario {
  GameTree tree;
  PolicyProfile profile;
  PlayerRef cond;
  int target = 0;

  ValueTable Values() const { return ReachAndValues(tree, profile, cond, target); }
  BehavioralPolicy Policy() const { return PolicyOf(tree, profile, cond); }
  PlaythroughDataset Simulate(std::int64_t nu, std::uint64_t seed, int workers = 1) const {
    return SimulateDataset(tree, profile, cond, target, nu, seed, workers);
  }
  EstimateReport Plugin(const PlaythroughDataset& data) const {
    const ValueTable values = Values();
    return PluginEstimate(tree, data, values, Policy(), ExactOthersReach(values));
  }
  double Exact() const { return ExplainedVariance(tree, profile, target, cond).explained; }
};

Scenario Uniform(GameTree tree, PlayerRef cond) {
  PolicyProfile profile = PolicyProfile::Uniform(tree);
  return {std::move(tree), std::move(profile), cond, 0};
}

TEST(Simulate, Figure1ChanceTraces) {
  const Scenario s = Uniform(BuildFigure1(), PlayerRef::Chance());
  const PlaythroughDataset data = s.Simulate(1000, 5);
  ASSERT_EQ(data.size(), 1000u);
  for (const auto& r : data.records) {
    EXPECT_TRUE(r.trace.size() == 1 || r.trace.size() == 2);
  }
  EXPECT_THROW(s.Simulate(0, 5), InvalidArgument);
}

TEST(Simulate, DeterministicAcrossRunsAndWorkers) {
  const Scenario s = Uniform(BuildKuhnPoker(), PlayerRef::Player(1));
  const PlaythroughDataset a = s.Simulate(5000, 42, 1);
  EXPECT_EQ(a.records, s.Simulate(5000, 42, 1).records);
  EXPECT_EQ(a.records, s.Simulate(5000, 42, 4).records);
  EXPECT_NE(a.records, s.Simulate(5000, 43, 1).records);
}

TEST(Plugin, Figure1ChanceIsConsistent) {
  const Scenario s = Uniform(BuildFigure1(), PlayerRef::Chance());
  const EstimateReport r = s.Plugin(s.Simulate(200000, 7));
  EXPECT_GT(r.standard_error, 0.0);
  EXPECT_LE(std::fabs(r.estimate - 0.5), 3 * r.standard_error) << r.estimate;
  EXPECT_EQ(r.nu, 200000u);
}

TEST(Plugin, SingleActionGameIsZero) {
  GameBuilder b("forced", 1);
  b.Decision(0, 0, "only").Leaf(1, {3.0}).AddEdge(0, "go", 1).Root(0);
  const Scenario s = Uniform(b.Build(), PlayerRef::Player(0));
  EXPECT_EQ(s.Plugin(s.Simulate(1, 1)).estimate, 0.0);
}

TEST(Plugin, DeterministicConditionerIsExactlyZero) {
  Scenario s = Uniform(BuildKuhnPoker(), PlayerRef::Player(0));
  for (int u : s.tree.InfoStatesOf(PlayerRef::Player(0))) s.profile[0].Set(s.tree, u, {0.0, 1.0});
  const EstimateReport r = s.Plugin(s.Simulate(2000, 3));
  EXPECT_EQ(r.estimate, 0.0);
}

TEST(Plugin, RecordOrderInvariant) {
  const Scenario s = Uniform(BuildKuhnPoker(), PlayerRef::Chance());
  PlaythroughDataset data = s.Simulate(3000, 9);
  const EstimateReport a = s.Plugin(data);
  std::reverse(data.records.begin(), data.records.end());
  std::rotate(data.records.begin(), data.records.begin() + 1234, data.records.end());
  const EstimateReport b = s.Plugin(data);
  EXPECT_NEAR(a.estimate, b.estimate, 1e-12);
  EXPECT_NEAR(a.standard_error, b.standard_error, 1e-12);
}

TEST(Plugin, MissingTableEntryNamesInfoState) {
  Scenario s = Uniform(BuildKuhnPoker(), PlayerRef::Player(0));
  for (int u : s.tree.InfoStatesOf(PlayerRef::Player(0))) s.profile[0].Set(s.tree, u, {0.0, 1.0});
  // Player 0 always bets, so the check-bet info states are unreachable.
  const PlaythroughDataset data =
      ParseDataset("outcome:1 p1_J=check p1_J_cb=fold\n", s.tree, s.cond);
  try {
    s.Plugin(data);
    FAIL();
  } catch (const MissingTableEntry& e) {
    EXPECT_NE(std::string(e.what()).find("p1_J"), std::string::npos) << e.what();
  }
}

TEST(Plugin, ConsistencyOnBuiltins) {
  for (const auto& [name, tree] : testing::AllBuiltins()) {
    for (PlayerRef cond : testing::AllConditioners(tree)) {
      const Scenario s = Uniform(tree, cond);
      const EstimateReport r = s.Plugin(s.Simulate(100000, 11));
      EXPECT_LE(std::fabs(r.estimate - s.Exact()), std::max(5 * r.standard_error, 1e-12))
          << name << " " << cond.ToString();
    }
  }
}

TEST(EmpiricalEta, Figure1Player0) {
  const Scenario s = Uniform(BuildFigure1(), PlayerRef::Player(0));
  const int nu = 100000;
  const EmpiricalEta eta = ComputeEmpiricalEta(s.tree, s.Simulate(nu, 21), s.Policy());
  const int u1 = InfoStateIndex(s.tree, "u1");
  EXPECT_LE(std::fabs(eta.visit_rate[u1] - 0.5), 3 * std::sqrt(0.25 / nu));
  EXPECT_DOUBLE_EQ(eta.own_reach[u1], 1.0);
}

TEST(EmpiricalEta, UnvisitedAndSingleRecord) {
  const GameTree tree = BuildFigure1();
  const BehavioralPolicy chance = BehavioralPolicy::ChancePolicy(tree);
  const PlaythroughDataset left = ParseDataset("outcome:0 chance:0=left\n", tree, PlayerRef::Chance());
  const EmpiricalEta eta = ComputeEmpiricalEta(tree, left, chance);
  EXPECT_EQ(eta.visit_rate[InfoStateIndex(tree, "chance:8")], 0.0);
  EXPECT_EQ(eta.visit_rate[InfoStateIndex(tree, "chance:0")], 1.0);
  EXPECT_EQ(eta.visits[InfoStateIndex(tree, "chance:0")], 1u);
  EXPECT_THROW(ComputeEmpiricalEta(tree, PlaythroughDataset{}, chance), InvalidArgument);
}

TEST(EmpiricalEta, PluginWithEmpiricalReach) {
  const Scenario s = Uniform(BuildFigure1(), PlayerRef::Chance());
  const PlaythroughDataset data = s.Simulate(100000, 4);
  const EmpiricalEta eta = ComputeEmpiricalEta(s.tree, data, s.Policy());
  const EstimateReport r = PluginEstimate(s.tree, data, s.Values(), s.Policy(), eta.others_reach,
                                          EstimateMethod::kPluginEmpiricalEta);
  EXPECT_EQ(r.method, EstimateMethod::kPluginEmpiricalEta);
  EXPECT_NEAR(r.estimate, 0.5, 0.02);
}

TEST(Regression, ChanceRpsIsNearZero) {
  const Scenario s = Uniform(BuildChanceRps(), PlayerRef::Chance());
  RegressionModelSpec spec;
  spec.bootstrap_resamples = 20;
  const EstimateReport r = RegressionEstimate(s.tree, s.Simulate(200000, 8), spec, s.Policy(), 8);
  EXPECT_LE(std::fabs(r.estimate), 0.005);
  EXPECT_GT(r.standard_error, 0.0);
}

TEST(Regression, AgreesWithPluginWhenEveryStateIsVisited) {
  // Kuhn's single deal node is visited on every playthrough.
  const Scenario s = Uniform(BuildKuhnPoker(), PlayerRef::Chance());
  const PlaythroughDataset data = s.Simulate(200000, 12);
  RegressionModelSpec spec;
  spec.bootstrap_resamples = 0;
  const double regression = RegressionEstimate(s.tree, data, spec, s.Policy(), 12).estimate;
  const double plugin = s.Plugin(data).estimate;
  EXPECT_LE(std::fabs(regression - plugin), 0.02 * std::fabs(plugin));
}

TEST(Regression, LinearOneHotOnFigure1Chance) {
  // E(Y | root, c2) is 0 on the left and +-1 on the right. The best
  // additive fit is +-0.5 by the second coin, variance 0.25.
  const Scenario s = Uniform(BuildFigure1(), PlayerRef::Chance());
  RegressionModelSpec spec;
  spec.kind = RegressionModelSpec::Kind::kLinearOneHot;
  spec.bootstrap_resamples = 0;
  const double linear = RegressionEstimate(s.tree, s.Simulate(100000, 2), spec, s.Policy(), 2).estimate;
  EXPECT_NEAR(linear, 0.25, 0.02);
  spec.kind = RegressionModelSpec::Kind::kSaturatedTabular;
  const double saturated =
      RegressionEstimate(s.tree, s.Simulate(100000, 2), spec, s.Policy(), 2).estimate;
  EXPECT_NEAR(saturated, 0.5, 0.03);
}

TEST(Regression, ConstantOutcomeIsZero) {
  const GameTree tree = BuildKuhnPoker().MapRewards([](double) { return 2.0; });
  const Scenario s = Uniform(tree, PlayerRef::Chance());
  RegressionModelSpec spec;
  spec.bootstrap_resamples = 5;
  const EstimateReport r = RegressionEstimate(s.tree, s.Simulate(2000, 1), spec, s.Policy(), 1);
  EXPECT_NEAR(r.estimate, 0.0, 1e-20);
}

TEST(Regression, SingularDesignWithoutRidge) {
  const Scenario s = Uniform(BuildChanceRps({1.0, 0.0, 0.0}), PlayerRef::Chance());
  RegressionModelSpec spec;
  spec.ridge = 0.0;
  spec.bootstrap_resamples = 0;
  EXPECT_THROW(RegressionEstimate(s.tree, s.Simulate(500, 1), spec, s.Policy(), 1),
               SingularDesign);
  spec.ridge = 1e-8;
  EXPECT_NO_THROW(RegressionEstimate(s.tree, s.Simulate(500, 1), spec, s.Policy(), 1));
}

TEST(Regression, ColumnCap) {
  const Scenario s = Uniform(BuildKuhnPoker(), PlayerRef::Player(0));
  RegressionModelSpec spec;
  spec.max_columns = 16;  // 2^6 joint cells
  EXPECT_THROW(RegressionEstimate(s.tree, s.Simulate(100, 1), spec, s.Policy(), 1), CapExceeded);
}

TEST(Regression, DeterministicAcrossWorkers) {
  const Scenario s = Uniform(BuildKuhnPoker(), PlayerRef::Player(1));
  const PlaythroughDataset data = s.Simulate(20000, 3);
  RegressionModelSpec spec;
  spec.bootstrap_resamples = 16;
  spec.workers = 1;
  const EstimateReport serial = RegressionEstimate(s.tree, data, spec, s.Policy(), 3);
  spec.workers = 4;
  const EstimateReport parallel = RegressionEstimate(s.tree, data, spec, s.Policy(), 3);
  EXPECT_EQ(serial.estimate, parallel.estimate);
  EXPECT_EQ(serial.standard_error, parallel.standard_error);
}

TEST(Regression, ImputationKeepsVisitedActions) {
  const GameTree tree = BuildKuhnPoker();
  const PlayerRef cond = PlayerRef::Player(0);
  const BehavioralPolicy policy = BehavioralPolicy::Uniform(tree, cond);
  const std::vector<int> owned = tree.InfoStatesOf(cond);
  std::vector<int> position(tree.num_info_states(), -1);
  for (std::size_t k = 0; k < owned.size(); ++k) position[owned[k]] = static_cast<int>(k);
  const PlaythroughDataset data = SimulateDataset(tree, PolicyProfile::Uniform(tree), cond, 0, 500, 6);
  const PlaythroughDataset copy = data;
  std::vector<int> assignment(owned.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    estimate_internal::Impute(data.records[k], owned, position, policy, k, assignment.data());
    for (const TraceStep& step : data.records[k].trace) {
      EXPECT_EQ(assignment[position[step.info_state]], step.action);
    }
    for (std::size_t j = 0; j < owned.size(); ++j) {
      EXPECT_GE(assignment[j], 0);
      EXPECT_LT(assignment[j], 2);
    }
  }
  RegressionModelSpec spec;
  spec.bootstrap_resamples = 2;
  RegressionEstimate(tree, data, spec, policy, 6);
  EXPECT_EQ(data.records, copy.records);
}

TEST(Dataset, ImportCases) {
  const GameTree tree = BuildFigure1();
  const PlayerRef chance = PlayerRef::Chance();
  const std::string log = "outcome:0 chance:0=left\noutcome:-1 chance:0=right chance:8=right\n";
  const PlaythroughDataset data = ParseDataset(log, tree, chance);
  ASSERT_EQ(data.size(), 2u);
  EXPECT_EQ(data.records[1].outcome, -1.0);
  EXPECT_EQ(data.records[1].trace.size(), 2u);
  EXPECT_EQ(SerializeDataset(tree, data), log);

  try {
    ParseDataset("outcome:0 chance:0=left\noutcome:1 nowhere=left\n", tree, chance);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("nowhere"), std::string::npos);
  }
  EXPECT_THROW(ParseDataset("outcome:x\n", tree, chance), ParseError);
  EXPECT_THROW(ParseDataset("chance:0=left\n", tree, chance), ParseError);
  EXPECT_THROW(ParseDataset("outcome:1 chance:0=up\n", tree, chance), ParseError);
  EXPECT_THROW(ParseDataset("outcome:1 u1=left\n", tree, chance), ParseError);

  const PlaythroughDataset empty = ParseDataset("", tree, chance);
  EXPECT_TRUE(empty.records.empty());
  const ValueTable values = ReachAndValues(tree, PolicyProfile::Uniform(tree), chance, 0);
  EXPECT_THROW(PluginEstimate(tree, empty, values, BehavioralPolicy::ChancePolicy(tree),
                              ExactOthersReach(values)),
               InvalidArgument);
  EXPECT_THROW(RegressionEstimate(tree, empty, {}, BehavioralPolicy::ChancePolicy(tree), 1),
               InvalidArgument);

  const auto path = std::filesystem::temp_directory_path() / "gamevar_import_test.log";
  std::ofstream(path) << log;
  EXPECT_EQ(ImportDataset(path.string(), tree, chance).records, data.records);
  std::filesystem::remove(path);
  EXPECT_THROW(ImportDataset("/nonexistent/log", tree, chance), InvalidArgument);
}

TEST(Dataset, SimulatedRoundTrip) {
  const Scenario s = Uniform(BuildKuhnPoker(), PlayerRef::Player(1));
  const PlaythroughDataset data = s.Simulate(300, 5);
  EXPECT_EQ(ParseDataset(SerializeDataset(s.tree, data), s.tree, s.cond).records, data.records);
}

}  // namespace
}  // namespace gamevar
