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

#ifndef GAMEVAR_EFG_TEXT_HPP_
#define GAMEVAR_EFG_TEXT_HPP_

// Line-oriented text formats for games, policies and rated populations.
//
// Game document:
//   game "<name>" players <n>
//   node <id> player <p> infoset <iset>
//   chance <id> <action>:<prob> ...
//   leaf <id> <r_0> ... <r_{n-1}>
//   edge <parent> <action> <child>
//   root <id>
//
// Policy document:
//   policy player <i>
//   infoset <iset> <action>:<prob> ...
//
// Population document:
//   member <name> rating <rho>
//   infoset <iset> <action>:<prob> ...
//
// '#' starts a comment. Tokens are separated by spaces or tabs.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "gamevar/errors.hpp"
#include "gamevar/game.hpp"
#include "gamevar/player.hpp"
#include "gamevar/policy.hpp"
#include "gamevar/population.hpp"

namespace gamevar {

// A document that tokenizes but describes an invalid game. Carries the
// validation diagnostics; line() points at the first offending declaration.
class SemanticError : public ParseError {
 public:
  SemanticError(std::size_t line, std::vector<Diagnostic> diagnostics)
      : ParseError(line, 0, Summarize(diagnostics)),
        diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string Summarize(const std::vector<Diagnostic>& diagnostics) {
    std::string out;
    for (const Diagnostic& d : diagnostics) {
      if (!out.empty()) out += "; ";
      out += ToString(d);
    }
    return out;
  }
  std::vector<Diagnostic> diagnostics_;
};

inline constexpr int kMaxPlayers = 1 << 16;

namespace text_internal {

struct Token {
  std::string text;
  std::size_t column = 0;
  bool quoted = false;
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

// Splits a document into non-empty token lines.
inline std::vector<Line> Tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(pos, end - pos);
    ++number;
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char ch = raw[i];
      if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++i;
        continue;
      }
      if (ch == '#') break;
      Token token;
      token.column = i + 1;
      if (ch == '"') {
        token.quoted = true;
        ++i;
        bool closed = false;
        while (i < raw.size()) {
          if (raw[i] == '\\' && i + 1 < raw.size()) {
            const char next = raw[i + 1];
            token.text += next == 'n' ? '\n' : next;
            i += 2;
          } else if (raw[i] == '"') {
            closed = true;
            ++i;
            break;
          } else {
            token.text += raw[i++];
          }
        }
        if (!closed) throw ParseError(number, token.column, "unterminated string");
      } else {
        while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' &&
               raw[i] != '\r' && raw[i] != '#') {
          token.text += raw[i++];
        }
      }
      line.tokens.push_back(std::move(token));
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

inline std::size_t LineCount(std::string_view text) {
  std::size_t n = 1;
  for (char ch : text) n += ch == '\n';
  return n;
}

inline void Expect(const Line& line, std::size_t index, std::string_view word) {
  if (index >= line.tokens.size()) {
    throw ParseError(line.number, 0, "expected '" + std::string(word) + "'");
  }
  if (line.tokens[index].text != word || line.tokens[index].quoted) {
    throw ParseError(line.number, line.tokens[index].column,
                     "expected '" + std::string(word) + "', got '" +
                         line.tokens[index].text + "'");
  }
}

inline const Token& At(const Line& line, std::size_t index,
                       std::string_view what) {
  if (index >= line.tokens.size()) {
    throw ParseError(line.number, 0, "missing " + std::string(what));
  }
  return line.tokens[index];
}

inline void ExpectCount(const Line& line, std::size_t count) {
  if (line.tokens.size() > count) {
    throw ParseError(line.number, line.tokens[count].column,
                     "unexpected token '" + line.tokens[count].text + "'");
  }
  if (line.tokens.size() < count) {
    throw ParseError(line.number, 0, "too few fields");
  }
}

template <typename Int>
Int ParseInt(const Line& line, const Token& token, std::string_view what) {
  Int value{};
  const char* first = token.text.data();
  const char* last = first + token.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.quoted || ec != std::errc() || ptr != last) {
    throw ParseError(line.number, token.column,
                     "invalid " + std::string(what) + " '" + token.text + "'");
  }
  return value;
}

inline double ParseReal(std::size_t line_number, std::size_t column,
                        std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ParseError(line_number, column,
                     "invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

// Parses "<action>:<prob>", splitting at the last ':'.
inline std::pair<std::string, double> ParseOutcome(const Line& line,
                                                   const Token& token) {
  const std::size_t colon = token.text.rfind(':');
  if (token.quoted || colon == std::string::npos || colon == 0) {
    throw ParseError(line.number, token.column,
                     "expected <action>:<prob>, got '" + token.text + "'");
  }
  const std::string action = token.text.substr(0, colon);
  const double prob =
      ParseReal(line.number, token.column + colon + 1,
                std::string_view(token.text).substr(colon + 1), "probability");
  return {action, prob};
}

inline std::string FormatReal(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

inline std::string Quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') {
      out += '\\';
      out += ch;
    } else if (ch == '\n') {
      out += "\\n";
    } else {
      out += ch;
    }
  }
  return out + "\"";
}

// Reads "infoset <iset> <a>:<p> ..." against `tree`; `allowed` restricts
// which owners may be named.
inline std::pair<int, std::vector<double>> ParseInfoStateLine(
    const Line& line, const GameTree& tree,
    const std::function<bool(PlayerRef)>& allowed, std::string_view context) {
  Expect(line, 0, "infoset");
  const Token& name = At(line, 1, "info state name");
  const auto u = tree.FindInfoState(name.text);
  if (!u) {
    throw ParseError(line.number, name.column,
                     "unknown info state '" + name.text + "'");
  }
  const InfoState& info = tree.info_state(*u);
  if (info.owner.is_chance() || !allowed(info.owner)) {
    throw ParseError(line.number, name.column,
                     "info state '" + name.text + "' belongs to player " +
                         info.owner.ToString() + ", not " + std::string(context));
  }
  std::vector<double> probs(info.num_actions(), 0.0);
  std::vector<bool> seen(info.num_actions(), false);
  double sum = 0.0;
  for (std::size_t t = 2; t < line.tokens.size(); ++t) {
    auto [action, prob] = ParseOutcome(line, line.tokens[t]);
    const auto a = tree.FindAction(*u, action);
    if (!a) {
      throw ParseError(line.number, line.tokens[t].column,
                       "unknown action '" + action + "' at info state '" +
                           info.name + "'");
    }
    if (seen[*a]) {
      throw ParseError(line.number, line.tokens[t].column,
                       "action '" + action + "' listed twice");
    }
    if (!std::isfinite(prob) || prob < 0.0) {
      throw ParseError(line.number, line.tokens[t].column,
                       "invalid probability for action '" + action + "'");
    }
    seen[*a] = true;
    probs[*a] = prob;
    sum += prob;
  }
  if (!(std::fabs(sum - 1.0) <= kProbabilityTolerance)) {
    throw ParseError(line.number, 0,
                     "distribution at info state '" + info.name +
                         "' is not normalized (sum " + std::to_string(sum) + ")");
  }
  return {*u, std::move(probs)};
}

}  // namespace text_internal

// Parses a game document without validating it. Syntax errors throw
// ParseError; structural problems surface through ValidateGame.
inline GameTree ParseGameUnchecked(std::string_view text,
                                   std::map<std::int64_t, std::size_t>* node_lines = nullptr) {
  using namespace text_internal;
  const std::vector<Line> lines = Tokenize(text);
  if (lines.empty()) throw ParseError(1, 0, "empty document, expected 'game' header");
  const Line& header = lines.front();
  Expect(header, 0, "game");
  const Token& name = At(header, 1, "game name");
  if (!name.quoted) throw ParseError(header.number, name.column, "game name must be quoted");
  Expect(header, 2, "players");
  const Token& count_token = At(header, 3, "player count");
  ExpectCount(header, 4);
  const int players = ParseInt<int>(header, count_token, "player count");
  if (players < 1 || players > kMaxPlayers) {
    throw ParseError(header.number, count_token.column,
                     "player count must be in [1, " + std::to_string(kMaxPlayers) + "]");
  }

  GameBuilder builder(name.text, players);
  bool have_root = false;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const Token& keyword = line.tokens[0];
    if (keyword.text == "node" && !keyword.quoted) {
      ExpectCount(line, 6);
      const auto id = ParseInt<std::int64_t>(line, line.tokens[1], "node id");
      Expect(line, 2, "player");
      const int player = ParseInt<int>(line, line.tokens[3], "player index");
      Expect(line, 4, "infoset");
      builder.Decision(id, player, line.tokens[5].text);
      if (node_lines) node_lines->insert_or_assign(id, line.number);
    } else if (keyword.text == "chance" && !keyword.quoted) {
      const auto id = ParseInt<std::int64_t>(line, At(line, 1, "node id"), "node id");
      if (line.tokens.size() < 3) {
        throw ParseError(line.number, 0, "chance node needs at least one outcome");
      }
      std::vector<std::pair<std::string, double>> outcomes;
      for (std::size_t t = 2; t < line.tokens.size(); ++t) {
        outcomes.push_back(ParseOutcome(line, line.tokens[t]));
      }
      builder.Chance(id, std::move(outcomes));
      if (node_lines) node_lines->insert_or_assign(id, line.number);
    } else if (keyword.text == "leaf" && !keyword.quoted) {
      const auto id = ParseInt<std::int64_t>(line, At(line, 1, "node id"), "node id");
      std::vector<double> rewards;
      for (std::size_t t = 2; t < line.tokens.size(); ++t) {
        rewards.push_back(ParseReal(line.number, line.tokens[t].column,
                                    line.tokens[t].text, "reward"));
      }
      builder.Leaf(id, std::move(rewards));
      if (node_lines) node_lines->insert_or_assign(id, line.number);
    } else if (keyword.text == "edge" && !keyword.quoted) {
      ExpectCount(line, 4);
      const auto parent = ParseInt<std::int64_t>(line, line.tokens[1], "node id");
      const auto child = ParseInt<std::int64_t>(line, line.tokens[3], "node id");
      builder.AddEdge(parent, line.tokens[2].text, child);
    } else if (keyword.text == "root" && !keyword.quoted) {
      ExpectCount(line, 2);
      if (have_root) throw ParseError(line.number, 1, "duplicate root line");
      builder.Root(ParseInt<std::int64_t>(line, line.tokens[1], "node id"));
      have_root = true;
    } else {
      throw ParseError(line.number, keyword.column,
                       "unknown keyword '" + keyword.text + "'");
    }
  }
  return builder.BuildUnchecked();
}

// Parses and validates a game document. Chance distributions are
// renormalized after validation.
inline GameTree ParseGame(std::string_view text) {
  std::map<std::int64_t, std::size_t> node_lines;
  GameTree tree = ParseGameUnchecked(text, &node_lines);
  std::vector<Diagnostic> diagnostics = ValidateGame(tree);
  if (!diagnostics.empty()) {
    std::size_t line = text_internal::LineCount(text);
    for (std::int64_t id : diagnostics.front().nodes) {
      auto it = node_lines.find(id);
      if (it != node_lines.end()) {
        line = it->second;
        break;
      }
    }
    throw SemanticError(line, std::move(diagnostics));
  }
  return GameBuilder::From(tree).Build();
}

// Canonical document: header, node lines in id order, edge lines grouped by
// parent in id order, then the root line. Reals use 17 significant digits.
inline std::string SerializeGame(const GameTree& tree) {
  using text_internal::FormatReal;
  std::string out = "game " + text_internal::Quote(tree.name()) + " players " +
                    std::to_string(tree.player_count()) + "\n";
  for (const Node& n : tree.nodes()) {
    switch (n.kind) {
      case NodeKind::kDecision:
        out += "node " + std::to_string(n.id) + " player " +
               std::to_string(n.player) + " infoset " + n.info_state_name + "\n";
        break;
      case NodeKind::kChance:
        out += "chance " + std::to_string(n.id);
        for (std::size_t a = 0; a < n.edges.size(); ++a) {
          out += " " + n.edges[a].action + ":" + FormatReal(n.chance_probs[a]);
        }
        out += "\n";
        break;
      case NodeKind::kTerminal:
        out += "leaf " + std::to_string(n.id);
        for (double r : n.rewards) out += " " + FormatReal(r);
        out += "\n";
        break;
    }
  }
  for (const Node& n : tree.nodes()) {
    for (const Edge& e : n.edges) {
      out += "edge " + std::to_string(n.id) + " " + e.action + " " +
             std::to_string(e.child_id) + "\n";
    }
  }
  if (tree.root_id()) out += "root " + std::to_string(*tree.root_id()) + "\n";
  return out;
}

// Parses every "policy player <i>" block in a document.
inline std::vector<BehavioralPolicy> ParsePolicies(std::string_view text,
                                                   const GameTree& tree) {
  using namespace text_internal;
  std::vector<BehavioralPolicy> out;
  std::set<int> listed;
  for (const Line& line : Tokenize(text)) {
    if (line.tokens[0].text == "policy") {
      ExpectCount(line, 3);
      Expect(line, 1, "player");
      const int player = ParseInt<int>(line, line.tokens[2], "player index");
      if (player < 0 || player >= tree.player_count()) {
        throw ParseError(line.number, line.tokens[2].column,
                         "unknown player " + std::to_string(player));
      }
      out.push_back(BehavioralPolicy::Uniform(tree, PlayerRef::Player(player)));
      listed.clear();
      continue;
    }
    if (out.empty()) {
      throw ParseError(line.number, line.tokens[0].column,
                       "expected 'policy player <i>' header");
    }
    BehavioralPolicy& policy = out.back();
    const PlayerRef owner = policy.owner();
    auto [u, probs] = ParseInfoStateLine(
        line, tree, [owner](PlayerRef p) { return p == owner; },
        "player " + owner.ToString());
    if (!listed.insert(u).second) {
      throw ParseError(line.number, line.tokens[1].column,
                       "info state '" + tree.info_state(u).name + "' listed twice");
    }
    policy.Set(tree, u, std::move(probs));
  }
  return out;
}

// Parses a single policy block. Info states it does not list are uniform.
inline BehavioralPolicy ParsePolicy(std::string_view text, const GameTree& tree) {
  std::vector<BehavioralPolicy> policies = ParsePolicies(text, tree);
  if (policies.size() != 1) {
    throw ParseError(1, 0,
                     "expected exactly one policy block, found " +
                         std::to_string(policies.size()));
  }
  return std::move(policies.front());
}

inline std::string SerializePolicy(const GameTree& tree,
                                   const BehavioralPolicy& policy) {
  std::string out = "policy player " + policy.owner().ToString() + "\n";
  for (int u : tree.InfoStatesOf(policy.owner())) {
    const InfoState& info = tree.info_state(u);
    out += "infoset " + info.name;
    const auto probs = policy.probs(u);
    for (std::size_t a = 0; a < info.num_actions(); ++a) {
      out += " " + info.actions[a] + ":" + text_internal::FormatReal(probs[a]);
    }
    out += "\n";
  }
  return out;
}

inline RatedPopulation ParsePopulation(std::string_view text, const GameTree& tree) {
  using namespace text_internal;
  RatedPopulation population;
  std::set<int> listed;
  for (const Line& line : Tokenize(text)) {
    if (line.tokens[0].text == "member") {
      ExpectCount(line, 4);
      Expect(line, 2, "rating");
      RatedMember member;
      member.name = line.tokens[1].text;
      member.rating = ParseReal(line.number, line.tokens[3].column,
                                line.tokens[3].text, "rating");
      if (!std::isfinite(member.rating)) {
        throw ParseError(line.number, line.tokens[3].column, "rating must be finite");
      }
      member.seats = PolicyProfile::Uniform(tree);
      population.members.push_back(std::move(member));
      listed.clear();
      continue;
    }
    if (population.members.empty()) {
      throw ParseError(line.number, line.tokens[0].column,
                       "expected 'member <name> rating <rho>'");
    }
    RatedMember& member = population.members.back();
    auto [u, probs] = ParseInfoStateLine(
        line, tree, [](PlayerRef) { return true; }, "a player");
    if (!listed.insert(u).second) {
      throw ParseError(line.number, line.tokens[1].column,
                       "info state '" + tree.info_state(u).name + "' listed twice");
    }
    member.seats[tree.info_state(u).owner.index()].Set(tree, u, std::move(probs));
  }
  if (population.members.empty()) {
    throw ParseError(LineCount(text), 0, "population has no members");
  }
  return population;
}

}  // namespace gamevar

#endif  // GAMEVAR_EFG_TEXT_HPP_
