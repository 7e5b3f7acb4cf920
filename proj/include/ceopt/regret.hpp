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

#ifndef CEOPT_REGRET_HPP_
#define CEOPT_REGRET_HPP_

#include <span>
#include <vector>

#include "ceopt/game.hpp"

namespace ceopt {

// Absolute tolerance for verifier equality comparisons.
inline constexpr double kVerifyTolerance = 1e-9;

enum class RegretMode {
  kCeWelfare,     // pairwise deviations, one welfare-gap component
  kCeEgalitarian, // pairwise deviations, one utility-gap component per player
  kCePareto,      // pairwise deviations, one utility-gap component for player q
  kCceWelfare,    // unconditional deviations, one welfare-gap component
};

// Index layout shared by regret and scaling vectors.
//
// CE modes: one component per (p, i, j) with i != j, sum_p m_p (m_p - 1) in
// total; CCE mode: one component per (p, j), sum_p m_p in total. Objective
// components follow the deviation block: a single welfare (or player-q) gap,
// or one gap per player in egalitarian mode. Heterogeneous action counts are
// supported; with a uniform m the dimensions reduce to nm(m-1)+1, nm(m-1)+n,
// and nm+1.
class RegretIndexSpace {
 public:
  RegretIndexSpace() = default;
  RegretIndexSpace(RegretMode mode, std::vector<int32_t> action_counts,
                   int pareto_player = -1);

  RegretMode mode() const { return mode_; }
  int players() const { return static_cast<int>(counts_.size()); }
  int32_t actions(int p) const { return counts_[p]; }
  const std::vector<int32_t>& action_counts() const { return counts_; }
  int pareto_player() const { return pareto_player_; }

  int deviation_dim() const { return deviation_dim_; }
  int objective_dim() const { return objective_dim_; }
  int dim() const { return deviation_dim_ + objective_dim_; }

  // CE-family index of the (p, i -> j) deviation component, i != j.
  int deviation_index(int p, int i, int j) const;
  // CCE index of the (p, -> j) deviation component.
  int cce_index(int p, int j) const;
  int objective_index(int c = 0) const { return deviation_dim_ + c; }

  bool operator==(const RegretIndexSpace& o) const {
    return mode_ == o.mode_ && counts_ == o.counts_ &&
           pareto_player_ == o.pareto_player_;
  }

 private:
  RegretMode mode_ = RegretMode::kCeWelfare;
  std::vector<int32_t> counts_;
  std::vector<int> offsets_;
  int deviation_dim_ = 0;
  int objective_dim_ = 0;
  int pareto_player_ = -1;
};

template <GameLike G>
RegretIndexSpace make_regret_space(RegretMode mode, const G& game,
                                   int pareto_player = -1) {
  std::vector<int32_t> counts(game.players());
  for (int p = 0; p < game.players(); ++p) counts[p] = game.actions(p);
  return RegretIndexSpace(mode, std::move(counts), pareto_player);
}

struct RegretVector {
  RegretIndexSpace space;
  std::vector<double> v;
};

// Nonnegative vector over the same index space; the trailing component(s)
// weight the objective gap.
struct ScalingVector {
  RegretIndexSpace space;
  std::vector<double> v;

  ScalingVector() = default;
  ScalingVector(RegretIndexSpace s, std::vector<double> values);
};

double scaled_regret(const ScalingVector& y, const RegretVector& r);

// Writes r(a) for the given mode and target into out (size space.dim()).
//
// Deviation components: (p,i,j) equals u_p(j, a_-p) - u_p(a) when a_p = i and
// 0 otherwise (CE modes); (p,j) equals u_p(j, a_-p) - u_p(a) unconditionally
// (CCE mode). Objective components: target - w(a) (welfare modes),
// target - u_p(a) per player (egalitarian), target - u_q(a) (Pareto).
template <GameLike G>
void fill_regret_vector(const G& game, const ActionProfile& a, double target,
                        const RegretIndexSpace& space, std::span<double> out) {
  const int n = game.players();
  if (space.players() != n || static_cast<int>(a.size()) != n)
    throw DimensionError("fill_regret_vector: space/game/profile mismatch");
  if (static_cast<int>(out.size()) != space.dim())
    throw DimensionError("fill_regret_vector: output has wrong dimension");
  for (double& x : out) x = 0.0;

  ActionProfile dev = a;
  double w = 0.0;
  for (int p = 0; p < n; ++p) {
    const double up = game.utility(p, a);
    w += up;
    const int32_t mp = game.actions(p);
    for (int32_t j = 0; j < mp; ++j) {
      if (j == a[p]) continue;
      dev[p] = j;
      const double gap = game.utility(p, dev) - up;
      if (space.mode() == RegretMode::kCceWelfare)
        out[space.cce_index(p, j)] = gap;
      else
        out[space.deviation_index(p, a[p], j)] = gap;
    }
    dev[p] = a[p];
    if (space.mode() == RegretMode::kCeEgalitarian)
      out[space.objective_index(p)] = target - up;
  }
  if (space.mode() == RegretMode::kCeWelfare ||
      space.mode() == RegretMode::kCceWelfare) {
    out[space.objective_index()] = target - w;
  } else if (space.mode() == RegretMode::kCePareto) {
    out[space.objective_index()] =
        target - game.utility(space.pareto_player(), a);
  }
}

template <GameLike G>
RegretVector build_regret_vector(const G& game, const ActionProfile& a,
                                 double target, const RegretIndexSpace& space) {
  RegretVector r{space, std::vector<double>(space.dim(), 0.0)};
  fill_regret_vector(game, a, target, space, r.v);
  return r;
}

template <GameLike G>
RegretVector build_regret_vector(const G& game, const ActionProfile& a,
                                 double target, RegretMode mode,
                                 int pareto_player = -1) {
  return build_regret_vector(game, a, target,
                             make_regret_space(mode, game, pareto_player));
}

// --- equilibrium verification ------------------------------------------

// Expected gain of player p for switching recommendation i -> j, summed over
// the support only.
template <GameLike G>
double ce_pair_regret(const G& game, const CorrelatedDistribution& x, int p,
                      int i, int j) {
  if (p < 0 || p >= game.players())
    throw ArgumentError("ce_pair_regret: bad player");
  if (i == j) throw ArgumentError("ce_pair_regret: i and j must differ");
  if (i < 0 || i >= game.actions(p) || j < 0 || j >= game.actions(p))
    throw ArgumentError("ce_pair_regret: action out of range");
  if (!x.normalized())
    throw NormalizationError("ce_pair_regret: distribution mass not 1");
  double acc = 0.0;
  ActionProfile dev;
  for (const auto& [a, mass] : x.entries()) {
    if (a[p] != i) continue;
    dev = a;
    dev[p] = j;
    acc += mass * (game.utility(p, dev) - game.utility(p, a));
  }
  return acc / x.total_mass();
}

// Expected gain of player p for committing to j before the draw.
template <GameLike G>
double cce_deviation_regret(const G& game, const CorrelatedDistribution& x,
                            int p, int j) {
  if (p < 0 || p >= game.players())
    throw ArgumentError("cce_deviation_regret: bad player");
  if (j < 0 || j >= game.actions(p))
    throw ArgumentError("cce_deviation_regret: action out of range");
  if (!x.normalized())
    throw NormalizationError("cce_deviation_regret: distribution mass not 1");
  double acc = 0.0;
  ActionProfile dev;
  for (const auto& [a, mass] : x.entries()) {
    dev = a;
    dev[p] = j;
    acc += mass * (game.utility(p, dev) - game.utility(p, a));
  }
  return acc / x.total_mass();
}

struct CeRegretReport {
  double max_regret = 0.0;
  int player = -1, from = -1, to = -1;  // argmax deviation, if any
  bool is_eps_ce(double eps) const {
    return max_regret <= eps + kVerifyTolerance;
  }
};

struct CceRegretReport {
  double max_regret = 0.0;
  int player = -1, to = -1;
  bool is_eps_cce(double eps) const {
    return max_regret <= eps + kVerifyTolerance;
  }
};

namespace detail {

template <GameLike G>
std::vector<std::pair<const ActionProfile*, double>> support_view(
    const G& game, const CorrelatedDistribution& x) {
  x.validate_for(
      [&] {
        std::vector<int32_t> counts(game.players());
        for (int p = 0; p < game.players(); ++p) counts[p] = game.actions(p);
        return ProfileSpace(std::move(counts));
      }());
  std::vector<std::pair<const ActionProfile*, double>> view;
  view.reserve(x.entries().size());
  for (const auto& [a, mass] : x.entries()) view.emplace_back(&a, mass);
  return view;
}

// All (p, i->j) deviation pairs in flat index order.
struct CePair {
  int p, i, j;
};
std::vector<CePair> ce_pairs(const std::vector<int32_t>& counts);
struct CcePair {
  int p, j;
};
std::vector<CcePair> cce_pairs(const std::vector<int32_t>& counts);

template <GameLike G>
double ce_pair_regret_over(
    const G& game,
    const std::vector<std::pair<const ActionProfile*, double>>& support,
    double total, const CePair& d) {
  double acc = 0.0;
  ActionProfile dev;
  for (const auto& [a, mass] : support) {
    if ((*a)[d.p] != d.i) continue;
    dev = *a;
    dev[d.p] = d.j;
    acc += mass * (game.utility(d.p, dev) - game.utility(d.p, *a));
  }
  return acc / total;
}

template <GameLike G>
double cce_pair_regret_over(
    const G& game,
    const std::vector<std::pair<const ActionProfile*, double>>& support,
    double total, const CcePair& d) {
  double acc = 0.0;
  ActionProfile dev;
  for (const auto& [a, mass] : support) {
    dev = *a;
    dev[d.p] = d.j;
    acc += mass * (game.utility(d.p, dev) - game.utility(d.p, *a));
  }
  return acc / total;
}

}  // namespace detail

namespace reference {

// Serial verification kept as the reference implementation for the parallel
// kernels below; identical summation order, so results match bit for bit.
template <GameLike G>
CeRegretReport max_ce_regret_report(const G& game,
                                    const CorrelatedDistribution& x) {
  const auto support = detail::support_view(game, x);
  const double total = x.total_mass();
  const auto pairs = detail::ce_pairs(
      [&] {
        std::vector<int32_t> c(game.players());
        for (int p = 0; p < game.players(); ++p) c[p] = game.actions(p);
        return c;
      }());
  CeRegretReport rep;
  bool any = false;
  for (const auto& d : pairs) {
    const double r = detail::ce_pair_regret_over(game, support, total, d);
    if (!any || r > rep.max_regret) {
      rep = {r, d.p, d.i, d.j};
      any = true;
    }
  }
  return rep;
}

template <GameLike G>
CceRegretReport max_cce_regret_report(const G& game,
                                      const CorrelatedDistribution& x) {
  const auto support = detail::support_view(game, x);
  const double total = x.total_mass();
  const auto pairs = detail::cce_pairs(
      [&] {
        std::vector<int32_t> c(game.players());
        for (int p = 0; p < game.players(); ++p) c[p] = game.actions(p);
        return c;
      }());
  CceRegretReport rep;
  bool any = false;
  for (const auto& d : pairs) {
    const double r = detail::cce_pair_regret_over(game, support, total, d);
    if (!any || r > rep.max_regret) {
      rep = {r, d.p, d.j};
      any = true;
    }
  }
  return rep;
}

}  // namespace reference

// Parallel over the deviation index space; each pair's sum runs in support
// order, so the result is independent of the thread count.
template <GameLike G>
CeRegretReport max_ce_regret_report(const G& game,
                                    const CorrelatedDistribution& x) {
  const auto support = detail::support_view(game, x);
  const double total = x.total_mass();
  std::vector<int32_t> counts(game.players());
  for (int p = 0; p < game.players(); ++p) counts[p] = game.actions(p);
  const auto pairs = detail::ce_pairs(counts);
  if (pairs.empty()) return {};
  std::vector<double> vals(pairs.size());
  const std::int64_t npairs = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static) if (npairs * static_cast<std::int64_t>(support.size()) > 4096)
  for (std::int64_t k = 0; k < npairs; ++k)
    vals[k] = detail::ce_pair_regret_over(game, support, total, pairs[k]);
  std::size_t best = 0;
  for (std::size_t k = 1; k < vals.size(); ++k)
    if (vals[k] > vals[best]) best = k;
  return {vals[best], pairs[best].p, pairs[best].i, pairs[best].j};
}

template <GameLike G>
CceRegretReport max_cce_regret_report(const G& game,
                                      const CorrelatedDistribution& x) {
  const auto support = detail::support_view(game, x);
  const double total = x.total_mass();
  std::vector<int32_t> counts(game.players());
  for (int p = 0; p < game.players(); ++p) counts[p] = game.actions(p);
  const auto pairs = detail::cce_pairs(counts);
  std::vector<double> vals(pairs.size());
  const std::int64_t npairs = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static) if (npairs * static_cast<std::int64_t>(support.size()) > 4096)
  for (std::int64_t k = 0; k < npairs; ++k)
    vals[k] = detail::cce_pair_regret_over(game, support, total, pairs[k]);
  std::size_t best = 0;
  for (std::size_t k = 1; k < vals.size(); ++k)
    if (vals[k] > vals[best]) best = k;
  return {vals[best], pairs[best].p, pairs[best].j};
}

template <GameLike G>
double max_ce_regret(const G& game, const CorrelatedDistribution& x) {
  return max_ce_regret_report(game, x).max_regret;
}

template <GameLike G>
double max_cce_regret(const G& game, const CorrelatedDistribution& x) {
  return max_cce_regret_report(game, x).max_regret;
}

}  // namespace ceopt

#endif  // CEOPT_REGRET_HPP_
