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

#ifndef GAMEVAR_SKILLRPS_HPP_
#define GAMEVAR_SKILLRPS_HPP_

// Closed-form three-way decomposition of SkillRPS(n, c, alpha) when both
// players pick N uniformly from {1..n} and the move uniformly from
// {rock, paper, scissors}, independently. The formulas assume exactly
// these uniform policies and do not generalize to other populations.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gamevar/builtins.hpp"
#include "gamevar/decomp_exact.hpp"
#include "gamevar/errors.hpp"
#include "gamevar/game.hpp"
#include "gamevar/population.hpp"

namespace gamevar {

struct SkillRpsParams {
  int n = 1;
  int c = 0;
  double alpha = 0.0;

  void Validate() const {
    if (n < 1) throw InvalidArgument("n must be >= 1");
    if (c < 0) throw InvalidArgument("c must be >= 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must be in [0, 1]");
  }
};

// Variance of E(Y | N1, N2, W = 0).
inline double Psi(int n, int c) {
  if (n < 1 || c < 0) throw InvalidArgument("psi needs n >= 1 and c >= 0");
  const double nd = n;
  const double cd = c;
  if (c == 0) return 1.0 - 1.0 / nd;
  if (c < n) return 1.0 - 1.0 / (3.0 * nd) + (8.0 * cd * cd + 2.0 * cd - 16.0 * cd * nd) / (9.0 * nd * nd);
  return (1.0 - 1.0 / nd) / 9.0;
}

inline ThreeWayReport AnalyticThreeway(const SkillRpsParams& params) {
  params.Validate();
  const double psi = Psi(params.n, params.c);
  const double a = params.alpha;
  const double n = params.n;
  ThreeWayReport r;
  r.skill = (1.0 - a) * (1.0 - a) * psi;
  r.chance = a + a * (1.0 - a) * psi;
  if (params.c == 0) {
    r.remaining = 0.0;
  } else if (params.c < params.n) {
    r.remaining = (1.0 - a) * (1.0 - 1.0 / n + 2.0 * params.c / (3.0 * n * n) - psi);
  } else {
    r.remaining = (1.0 - a) * (8.0 / 9.0 - 2.0 / (9.0 * n));
  }
  r.total = r.skill + r.chance + r.remaining;
  return r;
}

// One member per number N in {1..n}: always picks N, move uniform, rated N.
// Uniform sampling over members reproduces N ~ Uniform{1..n}.
inline RatedPopulation CanonicalSkillRpsPopulation(const GameTree& tree, int n) {
  RatedPopulation population;
  const int picks[2] = {*tree.FindInfoState("pick1"), *tree.FindInfoState("pick2")};
  for (int number = 1; number <= n; ++number) {
    RatedMember m;
    m.name = "N" + std::to_string(number);
    m.rating = number;
    m.seats = PolicyProfile::Uniform(tree);
    for (int seat = 0; seat < 2; ++seat) {
      std::vector<double> probs(tree.info_state(picks[seat]).num_actions(), 0.0);
      for (int move = 0; move < 3; ++move) {
        probs[*tree.FindAction(picks[seat], SkillRpsAction(number, move))] = 1.0 / 3.0;
      }
      m.seats[seat].Set(tree, picks[seat], std::move(probs));
    }
    population.members.push_back(std::move(m));
  }
  return population;
}

struct SweepGrid {
  std::vector<int> n;
  std::vector<int> c;
  std::vector<double> alpha;

  static SweepGrid Default() {
    SweepGrid g{{1, 2, 3, 5}, {0, 1, 2, 5}, {}};
    for (int k = 0; k <= 10; ++k) g.alpha.push_back(k / 10.0);
    return g;
  }
};

struct SweepRow {
  SkillRpsParams params;
  ThreeWayReport report;
};

// Rows ordered by n, then c, then alpha.
inline std::vector<SweepRow> Sweep(const SweepGrid& grid) {
  if (grid.n.empty() || grid.c.empty() || grid.alpha.empty()) {
    throw InvalidArgument("sweep grid must be nonempty in every dimension");
  }
  std::vector<SweepRow> rows;
  for (int n : grid.n) {
    for (int c : grid.c) {
      for (double alpha : grid.alpha) {
        const SkillRpsParams p{n, c, alpha};
        rows.push_back({p, AnalyticThreeway(p)});
      }
    }
  }
  return rows;
}

inline std::string FormatCsvReal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string SweepCsv(const std::vector<SweepRow>& rows) {
  std::string out = "n,c,alpha,skill,chance,remaining,total\n";
  for (const SweepRow& r : rows) {
    out += std::to_string(r.params.n) + "," + std::to_string(r.params.c) + "," +
           FormatCsvReal(r.params.alpha) + "," + FormatCsvReal(r.report.skill) + "," +
           FormatCsvReal(r.report.chance) + "," + FormatCsvReal(r.report.remaining) + "," +
           FormatCsvReal(r.report.total) + "\n";
  }
  return out;
}

}  // namespace gamevar

#endif  // GAMEVAR_SKILLRPS_HPP_
