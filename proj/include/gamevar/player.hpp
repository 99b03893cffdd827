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

#ifndef GAMEVAR_PLAYER_HPP_
#define GAMEVAR_PLAYER_HPP_

#include <charconv>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace gamevar {

// Either the chance player or a player index in [0, n).
class PlayerRef {
 public:
  static constexpr int kChanceIndex = -1;

  constexpr PlayerRef() = default;
  static constexpr PlayerRef Chance() { return PlayerRef(kChanceIndex); }
  static constexpr PlayerRef Player(int index) { return PlayerRef(index); }

  constexpr bool is_chance() const { return index_ == kChanceIndex; }
  // Only meaningful when !is_chance().
  constexpr int index() const { return index_; }

  // Dense slot in [0, n]: chance maps to 0, player i to i + 1.
  constexpr std::size_t slot() const {
    return static_cast<std::size_t>(index_ + 1);
  }
  static constexpr PlayerRef FromSlot(std::size_t slot) {
    return PlayerRef(static_cast<int>(slot) - 1);
  }

  constexpr bool valid_for(int player_count) const {
    return is_chance() || (index_ >= 0 && index_ < player_count);
  }

  std::string ToString() const {
    return is_chance() ? std::string("chance") : std::to_string(index_);
  }

  // Accepts "chance" or a nonnegative decimal index.
  static std::optional<PlayerRef> Parse(std::string_view text) {
    if (text == "chance" || text == "c") return Chance();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                     value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
      return std::nullopt;
    }
    return Player(value);
  }

  friend constexpr auto operator<=>(PlayerRef, PlayerRef) = default;

 private:
  constexpr explicit PlayerRef(int index) : index_(index) {}
  int index_ = kChanceIndex;
};

}  // namespace gamevar

#endif  // GAMEVAR_PLAYER_HPP_
