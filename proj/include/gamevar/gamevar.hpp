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

#ifndef GAMEVAR_GAMEVAR_HPP_
#define GAMEVAR_GAMEVAR_HPP_

#include "gamevar/builtins.hpp"
#include "gamevar/decomp_estimate.hpp"
#include "gamevar/decomp_exact.hpp"
#include "gamevar/efg_text.hpp"
#include "gamevar/errors.hpp"
#include "gamevar/game.hpp"
#include "gamevar/oracle.hpp"
#include "gamevar/parallel.hpp"
#include "gamevar/player.hpp"
#include "gamevar/policy.hpp"
#include "gamevar/population.hpp"
#include "gamevar/random_game.hpp"
#include "gamevar/rng.hpp"
#include "gamevar/skillrps.hpp"
#include "gamevar/traversal.hpp"

#endif  // GAMEVAR_GAMEVAR_HPP_
