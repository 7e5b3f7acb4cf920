// Copyright 2026 The Authors.
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

#ifndef CEOPT_SOLVER_HPP_
#define CEOPT_SOLVER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ceopt/mwmp.hpp"
#include "ceopt/regret.hpp"

namespace ceopt {

struct SolverConfig {
  double epsilon = 0.1;  // in (0, 1]
  RegretMode mode = RegretMode::kCeWelfare;
  int pareto_player = -1;
  double target = 0.0;
  // Overrides the n^2 m^4 / eps^2 iteration budget (testing only).
  std::optional<std::uint64_t> max_iterations;
  bool early_exit = true;  // stop once d(r_bar, N) <= eps/2
  bool record_trace = false;
  std::uint64_t trace_stride = 1;
};

struct SolverTraceRow {
  std::uint64_t t = 0;
  double distance = 0.0;
  double oracle_value = 0.0;
  std::uint32_t y_support = 0;
};

struct SolverTrace {
  std::vector<SolverTraceRow> rows;  // when record_trace
  std::uint64_t iterations = 0;      // oracle calls made
  std::uint64_t budget = 0;          // configured N
  double final_distance = 0.0;
  std::uint64_t envelope_violations = 0;  // zero on every successful return
  double verified_regret = 0.0;   // per-mode max regret of the returned x
  double verified_objective = 0.0;
  double average_gap = 0.0;  // |r_bar - E_x r(a)|_inf, certificate consistency
};

struct SolverResult {
  CorrelatedDistribution distribution;
  SolverTrace trace;
};

class SolverError : public Error {
 public:
  enum class Kind { kTargetInfeasible, kOracleViolation };

  SolverError(Kind kind, std::uint64_t iteration, double observed,
              const std::string& msg)
      : Error(msg), kind(kind), iteration(iteration), observed(observed) {}

  Kind kind;
  std::uint64_t iteration;
  double observed;
};

inline std::vector<double> project_negative_orthant(std::vector<double> v) {
  for (double& x : v) x = std::min(0.0, x);
  return v;
}

// N = ceil(8 n^2 m^4 / eps^2); with the envelope constant below this pins the
// final distance under eps for every n, m >= 1.
inline std::uint64_t solver_iteration_budget(int n, int32_t max_actions,
                                             double eps) {
  const double m = static_cast<double>(max_actions);
  const double nn = static_cast<double>(n);
  return static_cast<std::uint64_t>(
      std::ceil(8.0 * nn * nn * m * m * m * m / (eps * eps)));
}

// Oracle tolerance keeping the cross term of the telescoping bound below
// 1/(t+1)^2 for every t <= N.
inline double solver_oracle_alpha(std::uint64_t N) {
  const double dn = static_cast<double>(N);
  return 1.0 / (2.0 * dn * (dn + 1.0));
}

namespace detail {

// Running compensated sum of regret vectors; keeps the average faithful to
// 1e-12 even over millions of iterations.
class KahanVector {
 public:
  explicit KahanVector(std::size_t dim) : sum_(dim, 0.0), comp_(dim, 0.0) {}
  void add(const std::vector<double>& v) {
    for (std::size_t i = 0; i < sum_.size(); ++i) {
      const double y = v[i] - comp_[i];
      const double t = sum_[i] + y;
      comp_[i] = (t - sum_[i]) - y;
      sum_[i] = t;
    }
  }
  void average_into(double count, std::vector<double>& out) const {
    for (std::size_t i = 0; i < sum_.size(); ++i) out[i] = sum_[i] / count;
  }

 private:
  std::vector<double> sum_, comp_;
};

inline double positive_norm_sq(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v)
    if (x > 0.0) acc += x * x;
  return acc;
}

}  // namespace detail

// One pass of the projection-driven no-regret dynamic:
//   y_t   = positive part of the running average regret vector,
//   a_t   = oracle argmax of the modified welfare under y_t,
//   r_bar = running average of r(a_0), ..., a_0 included.
// Returns the empirical distribution over the visited profiles once the
// average regret vector sits within epsilon of the negative orthant.
//
// Throws SolverError(kOracleViolation) when an oracle answer breaks
// y.r(a) <= alpha, and SolverError(kTargetInfeasible) when the distance
// envelope is breached mid-run (which certifies the target exceeds the
// optimum, given an in-contract oracle) or the final distance exceeds
// epsilon. The returned distribution is re-verified through the regret
// module rather than trusted from the running average.
template <GameLike G>
SolverResult solve(const G& game, const MwmpOracle& oracle,
                   const SolverConfig& cfg) {
  if (!(cfg.epsilon > 0.0) || cfg.epsilon > 1.0)
    throw ArgumentError("solve: epsilon must lie in (0, 1]");
  const double target_ceiling =
      (cfg.mode == RegretMode::kCeEgalitarian ||
       cfg.mode == RegretMode::kCePareto)
          ? 1.0
          : static_cast<double>(game.players());
  if (!(cfg.target >= 0.0) || cfg.target > target_ceiling)
    throw ArgumentError("solve: target outside the objective's range");
  const RegretIndexSpace& space = oracle.space();
  if (space.mode() != cfg.mode ||
      (cfg.mode == RegretMode::kCePareto &&
       space.pareto_player() != cfg.pareto_player))
    throw ArgumentError("solve: oracle index space does not match the mode");
  const int n = game.players();
  if (space.players() != n)
    throw DimensionError("solve: oracle space and game disagree");
  int32_t mmax = 1;
  for (int p = 0; p < n; ++p) {
    if (space.actions(p) != game.actions(p))
      throw DimensionError("solve: oracle space and game disagree");
    mmax = std::max(mmax, game.actions(p));
  }

  const std::uint64_t N =
      cfg.max_iterations.value_or(solver_iteration_budget(n, mmax, cfg.epsilon));
  if (N < 1) throw ArgumentError("solve: iteration budget must be >= 1");
  const double alpha = solver_oracle_alpha(N);
  if (oracle.tolerance() > alpha)
    throw ArgumentError(
        "solve: oracle tolerance exceeds the budgeted alpha; use a finer "
        "oracle or a larger epsilon");

  const double nn = static_cast<double>(n);
  const double m2 = static_cast<double>(mmax) * static_cast<double>(mmax);
  const double norm_cap = 2.0 * nn * nn * m2 * m2;   // |r(a)|^2 bound
  const double envelope_c = 4.0 * nn * nn * m2 * m2 + 1.0;
  const double slack = 1e-9;
  const std::size_t dim = static_cast<std::size_t>(space.dim());

  SolverTrace trace;
  trace.budget = N;
  if (cfg.record_trace) trace.rows.reserve(1024);

  detail::KahanVector sum(dim);
  std::vector<double> r(dim, 0.0), rbar(dim, 0.0);
  ScalingVector y(space, std::vector<double>(dim, 0.0));
  std::map<ActionProfile, std::uint64_t> counts;

  ActionProfile a0(std::vector<int32_t>(n, 0));
  fill_regret_vector(game, a0, cfg.target, space, r);
  sum.add(r);
  ++counts[a0];
  sum.average_into(1.0, rbar);

  double d2 = detail::positive_norm_sq(rbar);
  double d1sq = 0.0;
  std::uint64_t done = 0;

  for (std::uint64_t t = 1; t <= N; ++t) {
    std::uint32_t y_support = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      y.v[i] = rbar[i] > 0.0 ? rbar[i] : 0.0;
      if (y.v[i] > 0.0) ++y_support;
      if (y.v[i] > nn + slack)
        throw InternalError("solve: scaling component escaped [0, n]");
    }
    const MwmpResult pick = oracle.maximize(y);
    fill_regret_vector(game, pick.profile, cfg.target, space, r);

    double ytr = 0.0, rnorm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      ytr += y.v[i] * r[i];
      rnorm += r[i] * r[i];
    }
    if (rnorm > norm_cap + slack)
      throw InternalError("solve: regret vector norm bound violated");
    if (ytr > alpha + slack)
      throw SolverError(SolverError::Kind::kOracleViolation, t, ytr,
                        "solve: oracle answer violates y.r(a) <= alpha "
                        "(broken oracle or target above the optimum)");

    sum.add(r);
    ++counts[pick.profile];
    sum.average_into(static_cast<double>(t + 1), rbar);
    d2 = detail::positive_norm_sq(rbar);
    if (t == 1) d1sq = d2;

    const double td = static_cast<double>(t);
    const double envelope = envelope_c / td + 4.0 * d1sq / (td * td);
    if (d2 > envelope + slack) {
      ++trace.envelope_violations;
      throw SolverError(SolverError::Kind::kTargetInfeasible, t, std::sqrt(d2),
                        "solve: distance envelope breached; the target is "
                        "above the reachable optimum");
    }

    done = t;
    if (cfg.record_trace && t % cfg.trace_stride == 0)
      trace.rows.push_back({t, std::sqrt(d2), pick.value, y_support});
    if (cfg.early_exit && std::sqrt(d2) <= cfg.epsilon / 2.0) break;
  }

  trace.iterations = done;
  trace.final_distance = std::sqrt(d2);
  if (trace.final_distance > cfg.epsilon)
    throw SolverError(SolverError::Kind::kTargetInfeasible, done,
                      trace.final_distance,
                      "solve: final distance above epsilon; the target is "
                      "above the reachable optimum or the oracle is weaker "
                      "than declared");

  const double total = static_cast<double>(done + 1);
  CorrelatedDistribution x;
  for (const auto& [profile, c] : counts)
    x.add(profile, static_cast<double>(c) / total);

  // Certificate consistency: the running average must match the expectation
  // of r(a) under the returned distribution.
  std::vector<double> expect(dim, 0.0);
  for (const auto& [profile, c] : counts) {
    fill_regret_vector(game, profile, cfg.target, space, r);
    const double w = static_cast<double>(c) / total;
    for (std::size_t i = 0; i < dim; ++i) expect[i] += w * r[i];
  }
  double gap = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    gap = std::max(gap, std::abs(expect[i] - rbar[i]));
  trace.average_gap = gap;
  if (gap > 1e-9)
    throw InternalError("solve: returned distribution disagrees with r_bar");

  switch (cfg.mode) {
    case RegretMode::kCeWelfare:
    case RegretMode::kCeEgalitarian:
    case RegretMode::kCePareto:
      trace.verified_regret = max_ce_regret(game, x);
      break;
    case RegretMode::kCceWelfare:
      trace.verified_regret = max_cce_regret(game, x);
      break;
  }
  switch (cfg.mode) {
    case RegretMode::kCeWelfare:
    case RegretMode::kCceWelfare:
      trace.verified_objective = expected_welfare(game, x);
      break;
    case RegretMode::kCeEgalitarian: {
      double worst = 1.0;
      for (int p = 0; p < n; ++p)
        worst = std::min(worst, expected_player_utility(game, x, p));
      trace.verified_objective = worst;
      break;
    }
    case RegretMode::kCePareto:
      trace.verified_objective =
          expected_player_utility(game, x, cfg.pareto_player);
      break;
  }
  if (trace.verified_regret > cfg.epsilon + kVerifyTolerance ||
      cfg.target - trace.verified_objective > cfg.epsilon + kVerifyTolerance)
    throw InternalError("solve: output failed independent re-verification");

  return {std::move(x), std::move(trace)};
}

struct TargetSearchResult {
  double target = 0.0;
  CorrelatedDistribution distribution;
  SolverTrace trace;
  int invocations = 0;
};

// Recovers the best achievable target by bisection over the eps/2 grid on
// [0, n] (or [0, 1] for per-player objectives), returning the largest grid
// value whose solve run certifies. Roughly log2(2n/eps) solver invocations.
//
// The result never falls more than eps below the exact optimum, and the
// returned distribution delivers objective >= target - eps. It can sit above
// the exact optimum when eps-approximate equilibria reach strictly higher
// objective values than exact ones (dominance-solvable games are the typical
// case); the returned certificate is still valid.
template <GameLike G>
TargetSearchResult binary_search_target(const G& game, const MwmpOracle& oracle,
                                        double eps, RegretMode mode,
                                        int pareto_player = -1,
                                        SolverConfig proto = {}) {
  const double hi_value = (mode == RegretMode::kCeEgalitarian ||
                           mode == RegretMode::kCePareto)
                              ? 1.0
                              : static_cast<double>(game.players());
  const double step = eps / 2.0;
  const std::uint64_t grid =
      static_cast<std::uint64_t>(std::ceil(hi_value / step));

  proto.epsilon = eps;
  proto.mode = mode;
  proto.pareto_player = pareto_player;

  TargetSearchResult out;
  std::optional<SolverResult> cached;
  std::uint64_t lo = 0, hi = grid + 1;  // lo certifies (T=0 always does)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    SolverConfig cfg = proto;
    cfg.target = std::min(static_cast<double>(mid) * step, hi_value);
    ++out.invocations;
    try {
      SolverResult res = solve(game, oracle, cfg);
      cached = std::move(res);
      lo = mid;
    } catch (const SolverError&) {
      hi = mid;
    }
  }
  if (!cached) {
    SolverConfig cfg = proto;
    cfg.target = 0.0;
    ++out.invocations;
    cached = solve(game, oracle, cfg);
  }
  out.target = std::min(static_cast<double>(lo) * step, hi_value);
  out.distribution = std::move(cached->distribution);
  out.trace = std::move(cached->trace);
  return out;
}

}  // namespace ceopt

#endif  // CEOPT_SOLVER_HPP_
