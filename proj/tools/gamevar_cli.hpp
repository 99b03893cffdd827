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

#ifndef GAMEVAR_TOOLS_GAMEVAR_CLI_HPP_
#define GAMEVAR_TOOLS_GAMEVAR_CLI_HPP_

// Command-line front end. RunCli is callable in-process so tests can check
// exit codes and output bytes without spawning processes.

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gamevar/gamevar.hpp"

namespace gamevar::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kCapExceeded = 3,
};

struct Hooks {
  // Explained-variance implementation used by oracle-check.
  ExplainedFn explained = DefaultExplained;
};

namespace detail {

using Json = nlohmann::json;

inline std::string Sha256Hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

inline std::string Real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Everything read from disk, in flag order, feeds the input digest.
struct Inputs {
  std::string digest_source;

  std::string Read(const std::string& path) {
    std::string text = ReadFile(path);
    digest_source += text;
    digest_source += '\0';
    return text;
  }

  GameTree LoadGame(const std::string& spec) {
    if (spec.rfind("builtin:", 0) == 0) {
      auto tree = BuiltinByName(spec.substr(8));
      if (!tree) throw InvalidArgument("unknown built-in '" + spec.substr(8) + "'");
      digest_source += SerializeGame(*tree);
      digest_source += '\0';
      return std::move(*tree);
    }
    return ParseGame(Read(spec));
  }

  PolicyProfile LoadProfile(const GameTree& tree, const std::vector<std::string>& paths) {
    PolicyProfile profile = PolicyProfile::Uniform(tree);
    for (const std::string& path : paths) {
      for (BehavioralPolicy& p : ParsePolicies(Read(path), tree)) {
        profile[p.owner().index()] = std::move(p);
      }
    }
    return profile;
  }
};

// A flat report: ordered key/value pairs rendered as text or JSON.
class Report {
 public:
  using Value = std::variant<double, std::int64_t, std::string, bool>;

  void Add(std::string key, Value value) { fields_.emplace_back(std::move(key), std::move(value)); }

  void AddList(std::string key, std::vector<std::pair<std::string, double>> items) {
    lists_.emplace_back(std::move(key), std::move(items));
  }

  std::string Render(const std::string& format, const Json& meta) const {
    if (format == "json") {
      Json payload = Json::object();
      for (const auto& [k, v] : fields_) payload[k] = ToJson(v);
      for (const auto& [k, items] : lists_) {
        Json arr = Json::array();
        for (const auto& [name, x] : items) arr.push_back({{"info_state", name}, {"contribution", x}});
        payload[k] = arr;
      }
      Json doc = {{"meta", meta}, {"payload", payload}};
      return doc.dump(2) + "\n";
    }
    std::string out;
    for (const auto& [k, v] : meta.items()) {
      out += "meta." + k + "=" + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
    for (const auto& [k, v] : fields_) out += k + "=" + ToText(v) + "\n";
    for (const auto& [k, items] : lists_) {
      for (const auto& [name, x] : items) out += k + "." + name + "=" + Real(x) + "\n";
    }
    return out;
  }

 private:
  static Json ToJson(const Value& v) {
    return std::visit([](const auto& x) { return Json(x); }, v);
  }
  static std::string ToText(const Value& v) {
    if (auto d = std::get_if<double>(&v)) return Real(*d);
    if (auto i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (auto b = std::get_if<bool>(&v)) return *b ? "true" : "false";
    return std::get<std::string>(v);
  }

  std::vector<std::pair<std::string, Value>> fields_;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, double>>>> lists_;
};

inline Json Meta(const Inputs& inputs, std::optional<std::uint64_t> seed) {
  Json meta = {{"input_digest", Sha256Hex(inputs.digest_source)}, {"tool_version", kToolVersion}};
  meta["seed"] = seed ? Json(*seed) : Json(nullptr);
  return meta;
}

inline PlayerRef ParsePlayerFlag(const std::string& text, const GameTree& tree) {
  auto p = PlayerRef::Parse(text);
  if (!p || !p->valid_for(tree.player_count())) {
    throw InvalidArgument("unknown player '" + text + "'");
  }
  return *p;
}

inline int ParseTarget(int target, const GameTree& tree) {
  if (target < 0 || target >= tree.player_count()) {
    throw InvalidArgument("unknown player " + std::to_string(target));
  }
  return target;
}

template <typename T>
std::vector<T> ParseList(const std::string& text, const std::string& what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T value{};
    char extra = 0;
    if (!(is >> value) || (is >> extra)) throw InvalidArgument("bad " + what + " list '" + text + "'");
    out.push_back(value);
  }
  if (out.empty()) throw InvalidArgument("empty " + what + " list");
  return out;
}

// "default" or "n=1,2;c=0,1;alpha=0,0.5,1".
inline SweepGrid ParseGrid(const std::string& spec) {
  if (spec.empty() || spec == "default") return SweepGrid::Default();
  SweepGrid grid;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InvalidArgument("bad grid component '" + part + "'");
    const std::string key = part.substr(0, eq);
    const std::string values = part.substr(eq + 1);
    if (key == "n") {
      grid.n = ParseList<int>(values, "n");
    } else if (key == "c") {
      grid.c = ParseList<int>(values, "c");
    } else if (key == "alpha") {
      grid.alpha = ParseList<double>(values, "alpha");
    } else {
      throw InvalidArgument("unknown grid key '" + key + "'");
    }
  }
  const SweepGrid fallback = SweepGrid::Default();
  if (grid.n.empty()) grid.n = fallback.n;
  if (grid.c.empty()) grid.c = fallback.c;
  if (grid.alpha.empty()) grid.alpha = fallback.alpha;
  for (int n : grid.n) SkillRpsParams{n, 0, 0.0}.Validate();
  for (int c : grid.c) SkillRpsParams{1, c, 0.0}.Validate();
  for (double a : grid.alpha) SkillRpsParams{1, 0, a}.Validate();
  return grid;
}

inline SkillRpsParams ParseSkillRps(const std::string& text) {
  const auto values = ParseList<double>(text, "skillrps");
  if (values.size() != 3 || values[0] != std::floor(values[0]) ||
      values[1] != std::floor(values[1])) {
    throw InvalidArgument("--skillrps expects n,c,alpha with integer n and c");
  }
  SkillRpsParams p{static_cast<int>(values[0]), static_cast<int>(values[1]), values[2]};
  p.Validate();
  return p;
}

inline void AddDecomposition(Report& r, const DecompositionReport& d) {
  r.Add("target", static_cast<std::int64_t>(d.target));
  r.Add("conditioning", d.conditioning.ToString());
  r.Add("total_variance", d.total_variance);
  r.Add("explained", d.explained);
  r.Add("residual", d.residual);
  r.Add("explained_ratio", d.explained_ratio);
  std::vector<std::pair<std::string, double>> items;
  for (const auto& c : d.per_info_state) items.emplace_back(c.info_state, c.contribution);
  r.AddList("per_info_state", std::move(items));
}

inline void AddThreeway(Report& r, const std::string& prefix, const ThreeWayReport& t) {
  r.Add(prefix + "skill", t.skill);
  r.Add(prefix + "chance", t.chance);
  r.Add(prefix + "remaining", t.remaining);
  r.Add(prefix + "total", t.total);
}

}  // namespace detail

// Runs one CLI invocation. `args` excludes the program name.
inline int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                  const Hooks& hooks = {}) {
  using namespace detail;
  CLI::App app{"Variance decomposition of extensive-form game outcomes", "gamevar"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string format = "text";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  // builtin
  std::string builtin_name;
  auto* builtin = app.add_subcommand("builtin", "Print a built-in game's canonical document");
  builtin->add_option("name", builtin_name, "figure1 | rps | chance-rps | kuhn | skill-rps:n,c,alpha")
      ->required();

  // validate
  std::string game_spec;
  auto* validate = app.add_subcommand("validate", "Check a game document for structural errors");
  validate->add_option("--game", game_spec, "Game file or builtin:<name>")->required();

  // decompose
  std::vector<std::string> policy_paths;
  int target = 0;
  std::string conditioning_text;
  auto* decompose = app.add_subcommand("decompose", "Exact variance decomposition");
  decompose->add_option("--game", game_spec, "Game file or builtin:<name>")->required();
  decompose->add_option("--policies", policy_paths, "Policy files (unlisted players are uniform)");
  decompose->add_option("--target", target, "Player whose reward is decomposed")->required();
  decompose->add_option("--conditioning", conditioning_text, "Player index or 'chance'")->required();
  add_format(decompose);

  // threeway
  std::string population_path;
  std::string skillrps_text;
  double chance_cap = 1e6;
  auto* threeway = app.add_subcommand("threeway", "Skill / chance / remaining decomposition");
  auto* tw_game = threeway->add_option("--game", game_spec, "Game file or builtin:<name>");
  auto* tw_pop = threeway->add_option("--population", population_path, "Rated population file");
  auto* tw_skill = threeway->add_option("--skillrps", skillrps_text, "n,c,alpha");
  tw_game->needs(tw_pop);
  tw_pop->needs(tw_game);
  tw_skill->excludes(tw_game)->excludes(tw_pop);
  threeway->add_option("--chance-cap", chance_cap, "Maximum joint chance assignments");
  add_format(threeway);

  // estimate / simulate
  std::string method = "plugin";
  std::int64_t nu = 0;
  std::uint64_t seed = 0;
  std::string log_path;
  std::string model = "saturated";
  double ridge = 1e-8;
  int bootstrap = 200;
  int workers = 1;
  auto* estimate = app.add_subcommand("estimate", "Sample-based estimate of the explained variance");
  estimate->add_option("--game", game_spec, "Game file or builtin:<name>")->required();
  estimate->add_option("--policies", policy_paths, "Policy files");
  estimate->add_option("--target", target, "Player whose reward is decomposed")->required();
  estimate->add_option("--conditioning", conditioning_text, "Player index or 'chance'")->required();
  estimate->add_option("--method", method, "plugin | plugin-empirical | regression")
      ->check(CLI::IsMember({"plugin", "plugin-empirical", "regression"}));
  auto* nu_opt = estimate->add_option("--nu", nu, "Number of simulated playthroughs");
  estimate->add_option("--seed", seed, "Master seed")->required();
  auto* log_opt = estimate->add_option("--log", log_path, "Import playthroughs instead of simulating");
  nu_opt->excludes(log_opt);
  estimate->add_option("--model", model, "Regression model")
      ->check(CLI::IsMember({"saturated", "linear"}));
  estimate->add_option("--ridge", ridge, "Ridge penalty");
  estimate->add_option("--bootstrap", bootstrap, "Bootstrap resamples for the regression error");
  estimate->add_option("--workers", workers, "Worker threads");
  add_format(estimate);

  std::string out_path;
  auto* simulate = app.add_subcommand("simulate", "Write a seeded playthrough log");
  simulate->add_option("--game", game_spec, "Game file or builtin:<name>")->required();
  simulate->add_option("--policies", policy_paths, "Policy files");
  simulate->add_option("--target", target, "Player whose reward is logged")->required();
  simulate->add_option("--conditioning", conditioning_text, "Player index or 'chance'")->required();
  simulate->add_option("--nu", nu, "Number of playthroughs")->required();
  simulate->add_option("--seed", seed, "Master seed")->required();
  simulate->add_option("--workers", workers, "Worker threads");
  simulate->add_option("--out", out_path, "Output path (default: standard output)");

  // sweep
  std::string grid_text = "default";
  auto* sweep = app.add_subcommand("sweep", "SkillRPS analytic sweep as CSV");
  sweep->add_option("--skillrps-grid", grid_text, "default or n=..;c=..;alpha=..");
  sweep->add_option("--out", out_path, "Output path (default: standard output)");

  // oracle-check
  double cap = kDefaultEnumerationCap;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the exact decomposition with brute force");
  oracle->add_option("--game", game_spec, "Game file or builtin:<name>")->required();
  oracle->add_option("--policies", policy_paths, "Policy files");
  oracle->add_option("--target", target, "Player whose reward is decomposed")->required();
  oracle->add_option("--conditioning", conditioning_text, "Player index or 'chance'")->required();
  oracle->add_option("--cap", cap, "Maximum joint assignments");
  add_format(oracle);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Inputs inputs;
  try {
    if (builtin->parsed()) {
      auto tree = BuiltinByName(builtin_name);
      if (!tree) {
        err << "error: unknown built-in '" << builtin_name << "'\n";
        return kInputError;
      }
      out << SerializeGame(*tree);
      return kOk;
    }

    if (validate->parsed()) {
      GameTree tree = game_spec.rfind("builtin:", 0) == 0
                          ? inputs.LoadGame(game_spec)
                          : ParseGameUnchecked(inputs.Read(game_spec));
      const auto diagnostics = ValidateGame(tree);
      for (const Diagnostic& d : diagnostics) out << ToString(d) << "\n";
      if (diagnostics.empty()) out << "ok\n";
      return diagnostics.empty() ? kOk : kCheckFailed;
    }

    if (decompose->parsed()) {
      const GameTree tree = inputs.LoadGame(game_spec);
      const PolicyProfile profile = inputs.LoadProfile(tree, policy_paths);
      const int t = ParseTarget(target, tree);
      const PlayerRef cond = ParsePlayerFlag(conditioning_text, tree);
      Report r;
      AddDecomposition(r, ExplainedVariance(tree, profile, t, cond));
      out << r.Render(format, Meta(inputs, std::nullopt));
      return kOk;
    }

    if (threeway->parsed()) {
      Report r;
      if (!skillrps_text.empty()) {
        const SkillRpsParams p = ParseSkillRps(skillrps_text);
        const GameTree tree = BuildSkillRps(p.n, p.c, p.alpha);
        inputs.digest_source += SerializeGame(tree);
        const ThreeWayReport exact =
            ThreewayDecompose(tree, CanonicalSkillRpsPopulation(tree, p.n), chance_cap);
        const ThreeWayReport analytic = AnalyticThreeway(p);
        AddThreeway(r, "", exact);
        AddThreeway(r, "analytic_", analytic);
        double deviation = 0.0;
        for (auto [e, a] : {std::pair{exact.skill, analytic.skill},
                            std::pair{exact.chance, analytic.chance},
                            std::pair{exact.remaining, analytic.remaining},
                            std::pair{exact.total, analytic.total}}) {
          deviation = std::max(deviation, std::fabs(e - a) / std::max(1.0, std::fabs(a)));
        }
        r.Add("max_relative_deviation", deviation);
      } else if (!game_spec.empty()) {
        const GameTree tree = inputs.LoadGame(game_spec);
        const RatedPopulation population = ParsePopulation(inputs.Read(population_path), tree);
        AddThreeway(r, "", ThreewayDecompose(tree, population, chance_cap));
      } else {
        err << "error: threeway needs --skillrps or --game with --population\n";
        return kInputError;
      }
      out << r.Render(format, Meta(inputs, std::nullopt));
      return kOk;
    }

    if (estimate->parsed() || simulate->parsed()) {
      const GameTree tree = inputs.LoadGame(game_spec);
      const PolicyProfile profile = inputs.LoadProfile(tree, policy_paths);
      const int t = ParseTarget(target, tree);
      const PlayerRef cond = ParsePlayerFlag(conditioning_text, tree);
      PlaythroughDataset data;
      if (!log_path.empty()) {
        data = ParseDataset(inputs.Read(log_path), tree, cond);
        data.path = log_path;
      } else {
        if (nu < 1) throw InvalidArgument("--nu must be at least 1");
        data = SimulateDataset(tree, profile, cond, t, nu, seed, workers);
      }
      if (simulate->parsed()) {
        const std::string text = SerializeDataset(tree, data);
        if (out_path.empty() || out_path == "-") {
          out << text;
        } else {
          std::ofstream file(out_path, std::ios::binary);
          if (!(file << text)) throw InvalidArgument("cannot write '" + out_path + "'");
        }
        return kOk;
      }
      if (data.records.empty()) throw InvalidArgument("dataset is empty");

      const BehavioralPolicy policy = PolicyOf(tree, profile, cond);
      const ValueTable values = ReachAndValues(tree, profile, cond, t);
      EstimateReport est;
      if (method == "plugin") {
        est = PluginEstimate(tree, data, values, policy, ExactOthersReach(values));
      } else if (method == "plugin-empirical") {
        const EmpiricalEta eta = ComputeEmpiricalEta(tree, data, policy);
        for (int u : tree.InfoStatesOf(cond)) {
          if (eta.visits[u] < 10) {
            err << "warning: info state '" << tree.info_state(u).name << "' visited "
                << eta.visits[u] << " times; its visit-rate estimate is unreliable\n";
          }
        }
        est = PluginEstimate(tree, data, values, policy, eta.others_reach,
                             EstimateMethod::kPluginEmpiricalEta);
      } else {
        RegressionModelSpec spec;
        spec.kind = model == "linear" ? RegressionModelSpec::Kind::kLinearOneHot
                                      : RegressionModelSpec::Kind::kSaturatedTabular;
        spec.ridge = ridge;
        spec.bootstrap_resamples = bootstrap;
        spec.workers = workers;
        est = RegressionEstimate(tree, data, spec, policy, seed);
      }
      const double exact = ExplainedVariance(tree, profile, t, cond).explained;
      Report r;
      r.Add("method", std::string(MethodName(est.method)));
      r.Add("target", static_cast<std::int64_t>(t));
      r.Add("conditioning", cond.ToString());
      r.Add("nu", static_cast<std::int64_t>(est.nu));
      r.Add("estimate", est.estimate);
      r.Add("standard_error", est.standard_error);
      r.Add("exact", exact);
      if (est.standard_error > 0.0) r.Add("z_score", (est.estimate - exact) / est.standard_error);
      out << r.Render(format, Meta(inputs, seed));
      return kOk;
    }

    if (sweep->parsed()) {
      const std::string csv = SweepCsv(Sweep(ParseGrid(grid_text)));
      if (out_path.empty() || out_path == "-") {
        out << csv;
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file || !(file << csv) || !file.flush()) {
          err << "error: cannot write '" << out_path << "'\n";
          return kInputError;
        }
      }
      return kOk;
    }

    if (oracle->parsed()) {
      const GameTree tree = inputs.LoadGame(game_spec);
      const PolicyProfile profile = inputs.LoadProfile(tree, policy_paths);
      const int t = ParseTarget(target, tree);
      const PlayerRef cond = ParsePlayerFlag(conditioning_text, tree);
      const OracleCheckResult result = OracleCheck(tree, profile, t, cond, cap, hooks.explained);
      Report r;
      r.Add("exact", result.exact);
      r.Add("oracle", result.oracle);
      r.Add("tolerance", result.tolerance);
      r.Add("agree", result.agree);
      out << r.Render(format, Meta(inputs, std::nullopt));
      return result.agree ? kOk : kCheckFailed;
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  err << "error: no command\n";
  return kInputError;
}

}  // namespace gamevar::cli

#endif  // GAMEVAR_TOOLS_GAMEVAR_CLI_HPP_
