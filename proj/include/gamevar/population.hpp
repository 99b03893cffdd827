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

#ifndef GAMEVAR_POPULATION_HPP_
#define GAMEVAR_POPULATION_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "gamevar/errors.hpp"
#include "gamevar/policy.hpp"

namespace gamevar {

// A member of a rated population. `seats[p]` is the policy the member
// plays when seated as player p, so one member works in either seat of a
// two-player game.
struct RatedMember {
  std::string name;
  double rating = 0.0;
  PolicyProfile seats;
};

// Finite population sampled uniformly, with replacement, for each seat.
struct RatedPopulation {
  std::vector<RatedMember> members;

  void Validate(const GameTree& tree) const {
    if (members.empty()) throw InvalidArgument("population is empty");
    for (const RatedMember& m : members) {
      if (!std::isfinite(m.rating)) {
        throw InvalidArgument("member '" + m.name + "' has a non-finite rating");
      }
      m.seats.Validate(tree);
    }
  }
};

}  // namespace gamevar

#endif  // GAMEVAR_POPULATION_HPP_
