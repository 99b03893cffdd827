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

#ifndef GAMEVAR_DECOMP_ESTIMATE_HPP_
#define GAMEVAR_DECOMP_ESTIMATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gamevar/efg_text.hpp"
#include "gamevar/errors.hpp"
#include "gamevar/game.hpp"
#include "gamevar/parallel.hpp"
#include "gamevar/player.hpp"
#include "gamevar/policy.hpp"
#include "gamevar/rng.hpp"
#include "gamevar/traversal.hpp"

namespace gamevar {

struct DatasetRecord {
  Trace trace;  // conditioning player's visited (info state, action) pairs
  double outcome = 0.0;
  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

struct PlaythroughDataset {
  PlayerRef conditioning;
  int target = -1;  // -1 when imported
  std::vector<DatasetRecord> records;
  bool simulated = false;
  std::uint64_t seed = 0;
  std::string path;

  std::size_t size() const { return records.size(); }
};

// nu independent playthroughs; record k uses its own stream derived from
// (seed, k), so the dataset does not depend on `workers`.
inline PlaythroughDataset SimulateDataset(const GameTree& tree, const PolicyProfile& profile,
                                          PlayerRef conditioning, int target, std::int64_t nu,
                                          std::uint64_t seed, int workers = 1) {
  if (nu < 1) throw InvalidArgument("nu must be at least 1");
  if (!conditioning.valid_for(tree.player_count())) {
    throw InvalidArgument("unknown player " + conditioning.ToString());
  }
  if (target < 0 || target >= tree.player_count()) {
    throw InvalidArgument("unknown player " + std::to_string(target));
  }
  profile.Validate(tree);
  PlaythroughDataset data;
  data.conditioning = conditioning;
  data.target = target;
  data.simulated = true;
  data.seed = seed;
  data.records.resize(static_cast<std::size_t>(nu));
  ParallelFor(data.records.size(), workers, [&](std::size_t k) {
    Rng rng(DeriveSeed(seed, Stream::kSimulation, k));
    Playthrough play = SamplePlaythrough(tree, profile, rng);
    data.records[k] = {std::move(play.traces[conditioning.slot()]), play.rewards[target]};
  });
  return data;
}

enum class EstimateMethod { kPlugin, kPluginEmpiricalEta, kRegression };

inline std::string_view MethodName(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::kPlugin: return "plugin";
    case EstimateMethod::kPluginEmpiricalEta: return "plugin-empirical";
    case EstimateMethod::kRegression: return "regression";
  }
  return "unknown";
}

struct EstimateReport {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t nu = 0;
  EstimateMethod method = EstimateMethod::kPlugin;
};

// η⁻ⁱ(u) from exact reach computations; empty where u is unreachable.
inline std::vector<std::optional<double>> ExactOthersReach(const ValueTable& table) {
  std::vector<std::optional<double>> out(table.size());
  for (std::size_t u = 0; u < table.size(); ++u) {
    if (table[u] && table[u]->reachable) out[u] = table[u]->others_reach;
  }
  return out;
}

// Averages, over records, the per-record sum over visited info states of
//   (sum_a q(u,a)^2 pi(a|u) - v(u)^2) * eta_-i(u).
// The standard error is the sample deviation of per-record sums over sqrt(nu).
inline EstimateReport PluginEstimate(const GameTree& tree, const PlaythroughDataset& data,
                                     const ValueTable& values, const BehavioralPolicy& policy,
                                     const std::vector<std::optional<double>>& others_reach,
                                     EstimateMethod method = EstimateMethod::kPlugin) {
  if (data.records.empty()) throw InvalidArgument("dataset is empty");
  // Per info state summand, computed once.
  std::vector<std::optional<double>> phi(tree.num_info_states());
  auto summand = [&](int u) -> double {
    if (phi[u]) return *phi[u];
    const std::string& name = tree.info_state(u).name;
    if (u >= static_cast<int>(values.size()) || !values[u] || !values[u]->value ||
        u >= static_cast<int>(others_reach.size()) || !others_reach[u]) {
      throw MissingTableEntry(name);
    }
    const InfoStateValues& entry = *values[u];
    const auto probs = policy.probs(u);
    double square_sum = 0.0;
    for (std::size_t a = 0; a < probs.size(); ++a) {
      if (probs[a] <= 0.0) continue;
      if (!entry.q[a]) throw MissingTableEntry(name);
      square_sum += (*entry.q[a]) * (*entry.q[a]) * probs[a];
    }
    phi[u] = (square_sum - (*entry.value) * (*entry.value)) * (*others_reach[u]);
    return *phi[u];
  };

  const std::size_t nu = data.records.size();
  std::vector<double> per_record(nu, 0.0);
  for (std::size_t k = 0; k < nu; ++k) {
    for (const TraceStep& step : data.records[k].trace) per_record[k] += summand(step.info_state);
  }
  double mean = 0.0;
  for (double x : per_record) mean += x;
  mean /= static_cast<double>(nu);
  double ss = 0.0;
  for (double x : per_record) ss += (x - mean) * (x - mean);
  EstimateReport report;
  report.estimate = mean;
  report.nu = nu;
  report.method = method;
  report.standard_error =
      nu > 1 ? std::sqrt(ss / static_cast<double>(nu - 1) / static_cast<double>(nu)) : 0.0;
  return report;
}

struct EmpiricalEta {
  std::vector<double> visit_rate;    // η̂(u); 0 for unobserved info states
  std::vector<double> own_reach;     // πⁱ(u), product along u's own history
  std::vector<std::optional<double>> others_reach;  // η̂(u) / πⁱ(u); empty if πⁱ(u) = 0
  std::vector<std::size_t> visits;
};

// Visit-frequency estimate of η(u) over the conditioning player's info
// states. Biased upward for rarely visited states.
inline EmpiricalEta ComputeEmpiricalEta(const GameTree& tree, const PlaythroughDataset& data,
                                        const BehavioralPolicy& policy) {
  if (data.records.empty()) throw InvalidArgument("dataset is empty");
  const int count = tree.num_info_states();
  EmpiricalEta out{std::vector<double>(count, 0.0), std::vector<double>(count, 0.0),
                   std::vector<std::optional<double>>(count), std::vector<std::size_t>(count, 0)};
  for (const DatasetRecord& r : data.records) {
    for (const TraceStep& step : r.trace) ++out.visits[step.info_state];
  }
  const double nu = static_cast<double>(data.records.size());
  for (int u : tree.InfoStatesOf(data.conditioning)) {
    out.visit_rate[u] = static_cast<double>(out.visits[u]) / nu;
    const std::vector<Trace> history = OwnerHistory(tree, tree.info_state(u).members.front());
    double own = 1.0;
    for (const TraceStep& step : history[data.conditioning.slot()]) {
      own *= policy.probs(step.info_state)[step.action];
    }
    out.own_reach[u] = own;
    if (own > 0.0) out.others_reach[u] = out.visit_rate[u] / own;
  }
  return out;
}

struct RegressionModelSpec {
  enum class Kind { kSaturatedTabular, kLinearOneHot };
  Kind kind = Kind::kSaturatedTabular;
  double ridge = 1e-8;
  double max_columns = 1024;
  int bootstrap_resamples = 200;
  int workers = 1;
};

namespace estimate_internal {

// Maps a full assignment (one action per owned info state) to the active
// columns of the design. Column 0 is the intercept; the remaining columns
// use treatment coding (first level dropped).
class Design {
 public:
  Design(const GameTree& tree, const std::vector<int>& owned, const RegressionModelSpec& spec)
      : kind_(spec.kind) {
    if (kind_ == RegressionModelSpec::Kind::kSaturatedTabular) {
      double cells = 1.0;
      for (int u : owned) {
        radix_.push_back(static_cast<int>(tree.info_state(u).num_actions()));
        cells *= radix_.back();
      }
      if (cells > spec.max_columns) {
        throw CapExceeded("saturated design columns", cells, spec.max_columns);
      }
      columns_ = static_cast<int>(cells);
    } else {
      int next = 1;
      for (int u : owned) {
        offset_.push_back(next);
        next += static_cast<int>(tree.info_state(u).num_actions()) - 1;
      }
      if (next > spec.max_columns) {
        throw CapExceeded("one-hot design columns", next, spec.max_columns);
      }
      columns_ = next;
    }
  }

  int columns() const { return columns_; }

  // Writes active columns (excluding the intercept) into `out`.
  void Active(const int* assignment, std::size_t n, std::vector<int>& out) const {
    out.clear();
    if (kind_ == RegressionModelSpec::Kind::kSaturatedTabular) {
      int cell = 0;
      for (std::size_t k = n; k-- > 0;) cell = cell * radix_[k] + assignment[k];
      if (cell > 0) out.push_back(cell);
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        if (assignment[k] > 0) out.push_back(offset_[k] + assignment[k] - 1);
      }
    }
  }

 private:
  RegressionModelSpec::Kind kind_;
  std::vector<int> radix_;
  std::vector<int> offset_;
  int columns_ = 1;
};

// Fits the ridge-regularized least-squares model on rows given by
// `assignments` (row-major, `width` entries per row) and returns the
// empirical variance of the fitted values.
inline double FitVariance(const Design& design, const std::vector<int>& assignments,
                          std::size_t width, const std::vector<double>& y, double ridge) {
  const int d = design.columns();
  const std::size_t nu = y.size();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d);
  std::vector<int> active;
  active.reserve(width + 1);
  for (std::size_t k = 0; k < nu; ++k) {
    design.Active(assignments.data() + k * width, width, active);
    active.insert(active.begin(), 0);
    for (int a : active) {
      rhs(a) += y[k];
      for (int b : active) gram(a, b) += 1.0;
    }
  }
  const double inv = 1.0 / static_cast<double>(nu);
  gram *= inv;
  rhs *= inv;
  for (int c = 1; c < d; ++c) gram(c, c) += ridge;

  Eigen::VectorXd theta;
  if (ridge > 0.0) {
    theta = gram.ldlt().solve(rhs);
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gram);
    if (qr.rank() < d) {
      throw SingularDesign("normal equations are singular (rank " + std::to_string(qr.rank()) +
                           " of " + std::to_string(d) + "); use a positive ridge");
    }
    theta = qr.solve(rhs);
  }

  std::vector<double> fitted(nu);
  double mean = 0.0;
  for (std::size_t k = 0; k < nu; ++k) {
    design.Active(assignments.data() + k * width, width, active);
    double f = theta(0);
    for (int a : active) f += theta(a);
    fitted[k] = f;
    mean += f;
  }
  mean *= inv;
  double var = 0.0;
  for (double f : fitted) var += (f - mean) * (f - mean);
  return var * inv;
}

// Fills the full assignment of one record: visited info states keep the
// recorded action, the others are drawn from the policy in canonical order.
inline void Impute(const DatasetRecord& record, const std::vector<int>& owned,
                   const std::vector<int>& position, const BehavioralPolicy& policy,
                   std::uint64_t seed, int* out) {
  const std::size_t n = owned.size();
  std::fill(out, out + n, -1);
  for (const TraceStep& step : record.trace) {
    const int k = position[step.info_state];
    if (k >= 0 && out[k] < 0) out[k] = step.action;
  }
  std::optional<Rng> rng;
  for (std::size_t k = 0; k < n; ++k) {
    if (out[k] >= 0) continue;
    if (!rng) rng.emplace(seed);
    out[k] = static_cast<int>(rng->Categorical(policy.probs(owned[k])));
  }
}

}  // namespace estimate_internal

// Regression estimator of V[E(Y | A^i)]: impute unvisited actions from the
// policy, fit E(Y | A^i) by least squares, report the empirical variance of
// the fitted values. The standard error comes from a seeded bootstrap that
// re-imputes within every resample.
inline EstimateReport RegressionEstimate(const GameTree& tree, const PlaythroughDataset& data,
                                         const RegressionModelSpec& spec,
                                         const BehavioralPolicy& policy, std::uint64_t seed) {
  using namespace estimate_internal;
  if (data.records.empty()) throw InvalidArgument("dataset is empty");
  if (!(spec.ridge >= 0.0) || !std::isfinite(spec.ridge)) {
    throw InvalidArgument("ridge must be finite and nonnegative");
  }
  const std::vector<int> owned = tree.InfoStatesOf(data.conditioning);
  std::vector<int> position(tree.num_info_states(), -1);
  for (std::size_t k = 0; k < owned.size(); ++k) position[owned[k]] = static_cast<int>(k);
  const Design design(tree, owned, spec);
  const std::size_t nu = data.records.size();
  const std::size_t width = owned.size();

  std::vector<double> y(nu);
  for (std::size_t k = 0; k < nu; ++k) y[k] = data.records[k].outcome;

  auto fit = [&](const std::vector<std::size_t>* rows, std::uint64_t impute_master) {
    std::vector<int> assignments(nu * width);
    std::vector<double> outcomes(nu);
    for (std::size_t k = 0; k < nu; ++k) {
      const std::size_t r = rows ? (*rows)[k] : k;
      Impute(data.records[r], owned, position, policy,
             DeriveSeed(impute_master, Stream::kImputation, k), assignments.data() + k * width);
      outcomes[k] = y[r];
    }
    return FitVariance(design, assignments, width, outcomes, spec.ridge);
  };

  EstimateReport report;
  report.method = EstimateMethod::kRegression;
  report.nu = nu;
  report.estimate = fit(nullptr, seed);

  const int resamples = std::max(0, spec.bootstrap_resamples);
  std::vector<double> replicate(static_cast<std::size_t>(resamples), 0.0);
  ParallelFor(replicate.size(), spec.workers, [&](std::size_t b) {
    const std::uint64_t master = DeriveSeed(seed, Stream::kBootstrap, b);
    Rng rng(master);
    std::vector<std::size_t> rows(nu);
    for (std::size_t& r : rows) r = static_cast<std::size_t>(rng.Below(nu));
    replicate[b] = fit(&rows, master);
  });
  if (resamples > 1) {
    double mean = 0.0;
    for (double x : replicate) mean += x;
    mean /= resamples;
    double ss = 0.0;
    for (double x : replicate) ss += (x - mean) * (x - mean);
    report.standard_error = std::sqrt(ss / (resamples - 1));
  }
  return report;
}

// Playthrough log: one record per line, "outcome:<real>" followed by
// "<infoset>=<action>" pairs in visit order. '#' starts a comment.
inline PlaythroughDataset ParseDataset(std::string_view text, const GameTree& tree,
                                       PlayerRef conditioning) {
  using namespace text_internal;
  if (!conditioning.valid_for(tree.player_count())) {
    throw InvalidArgument("unknown player " + conditioning.ToString());
  }
  PlaythroughDataset data;
  data.conditioning = conditioning;
  for (const Line& line : Tokenize(text)) {
    const Token& head = line.tokens[0];
    if (head.quoted || head.text.rfind("outcome:", 0) != 0) {
      throw ParseError(line.number, head.column, "expected outcome:<real>");
    }
    DatasetRecord record;
    record.outcome = ParseReal(line.number, head.column + 8,
                               std::string_view(head.text).substr(8), "outcome");
    if (!std::isfinite(record.outcome)) {
      throw ParseError(line.number, head.column, "outcome must be finite");
    }
    for (std::size_t t = 1; t < line.tokens.size(); ++t) {
      const Token& tok = line.tokens[t];
      const std::size_t eq = tok.text.rfind('=');
      if (tok.quoted || eq == std::string::npos || eq == 0 || eq + 1 == tok.text.size()) {
        throw ParseError(line.number, tok.column, "expected <infoset>=<action>");
      }
      const std::string name = tok.text.substr(0, eq);
      const std::string action = tok.text.substr(eq + 1);
      const auto u = tree.FindInfoState(name);
      if (!u) throw ParseError(line.number, tok.column, "unknown info state '" + name + "'");
      if (tree.info_state(*u).owner != conditioning) {
        throw ParseError(line.number, tok.column,
                         "info state '" + name + "' does not belong to player " +
                             conditioning.ToString());
      }
      const auto a = tree.FindAction(*u, action);
      if (!a) {
        throw ParseError(line.number, tok.column,
                         "unknown action '" + action + "' at info state '" + name + "'");
      }
      record.trace.push_back({*u, *a});
    }
    data.records.push_back(std::move(record));
  }
  return data;
}

inline PlaythroughDataset ImportDataset(const std::string& path, const GameTree& tree,
                                        PlayerRef conditioning) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  PlaythroughDataset data = ParseDataset(buf.str(), tree, conditioning);
  data.path = path;
  return data;
}

inline std::string SerializeDataset(const GameTree& tree, const PlaythroughDataset& data) {
  std::string out;
  for (const DatasetRecord& r : data.records) {
    out += "outcome:" + text_internal::FormatReal(r.outcome);
    for (const TraceStep& step : r.trace) {
      const InfoState& u = tree.info_state(step.info_state);
      out += " " + u.name + "=" + u.actions[step.action];
    }
    out += "\n";
  }
  return out;
}

}  // namespace gamevar

#endif  // GAMEVAR_DECOMP_ESTIMATE_HPP_
