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

#ifndef CEOPT_MWMP_HPP_
#define CEOPT_MWMP_HPP_

#include <cstdint>
#include <limits>
#include <vector>

#include "ceopt/aggregative.hpp"
#include "ceopt/game.hpp"
#include "ceopt/parallel.hpp"
#include "ceopt/regret.hpp"

namespace ceopt {

inline constexpr std::size_t kDefaultEnumerationCap = 1000000;

// Weight multiplying u_p(a) in the modified utility: the welfare component of
// y in welfare modes, the per-player component in egalitarian mode, and the
// single component gated on q in Pareto mode.
inline double objective_weight(const ScalingVector& y, int p) {
  switch (y.space.mode()) {
    case RegretMode::kCeWelfare:
    case RegretMode::kCceWelfare:
      return y.v[y.space.objective_index()];
    case RegretMode::kCeEgalitarian:
      return y.v[y.space.objective_index(p)];
    case RegretMode::kCePareto:
      return p == y.space.pareto_player() ? y.v[y.space.objective_index()] : 0.0;
  }
  return 0.0;
}

// u~^y_p(a) = weight_p * u_p(a) + sum_{j != a_p} y_(p, a_p, j) * (u_p(a) -
// u_p(j, a_-p)). Can be negative even though utilities are nonnegative.
template <GameLike G>
double modified_utility(const G& game, const ScalingVector& y,
                        const ActionProfile& a, int p) {
  const RegretIndexSpace& space = y.space;
  if (space.players() != game.players() ||
      static_cast<int>(a.size()) != game.players())
    throw DimensionError("modified_utility: shape mismatch");
  const double up = game.utility(p, a);
  double acc = objective_weight(y, p) * up;
  ActionProfile dev = a;
  for (int32_t j = 0; j < game.actions(p); ++j) {
    if (j == a[p]) continue;
    dev[p] = j;
    const double yc = space.mode() == RegretMode::kCceWelfare
                          ? y.v[space.cce_index(p, j)]
                          : y.v[space.deviation_index(p, a[p], j)];
    acc += yc * (up - game.utility(p, dev));
  }
  return acc;
}

template <GameLike G>
double modified_welfare(const G& game, const ScalingVector& y,
                        const ActionProfile& a) {
  double acc = 0.0;
  for (int p = 0; p < game.players(); ++p)
    acc += modified_utility(game, y, a, p);
  return acc;
}

// Grid form of the modified utility: evaluates payoffs at integer aggregate
// coordinates so the dynamic program and profile enumeration see bit-equal
// values. total must be the (discretized) aggregate of the full profile.
double aggregative_modified_utility(const AggregativeGame& game,
                                    const ScalingVector& y, int p,
                                    int32_t action, const GridCoord& total);

struct MwmpResult {
  ActionProfile profile;
  double value = -std::numeric_limits<double>::infinity();
};

namespace detail {

struct ProfileBest {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t rank = static_cast<std::size_t>(-1);
  bool beats(const ProfileBest& o) const {
    return value > o.value || (value == o.value && rank < o.rank);
  }
};

}  // namespace detail

namespace reference {

// Exact modified-welfare maximization by profile enumeration, serial.
// Ties resolve to the lexicographically smallest profile.
template <GameLike G>
MwmpResult brute_force_mwmp(const G& game, const ScalingVector& y,
                            std::size_t profile_cap = env_cap(
                                "CEOPT_ENUM_CAP", kDefaultEnumerationCap)) {
  const ProfileSpace& space = game.space();
  if (space.size() > profile_cap)
    throw CapacityError("brute_force_mwmp: profile count exceeds cap");
  detail::ProfileBest best;
  ActionProfile a = space.first();
  std::size_t r = 0;
  do {
    const double v = modified_welfare(game, y, a);
    if (detail::ProfileBest{v, r}.beats(best)) best = {v, r};
    ++r;
  } while (space.next(a));
  return {space.unrank(best.rank), best.value};
}

}  // namespace reference

// Parallel twin of reference::brute_force_mwmp; per-thread leaders merge
// under the same (value, lexicographic rank) order, so the result does not
// depend on the thread count.
template <GameLike G>
MwmpResult brute_force_mwmp(const G& game, const ScalingVector& y,
                            std::size_t profile_cap = env_cap(
                                "CEOPT_ENUM_CAP", kDefaultEnumerationCap)) {
  const ProfileSpace& space = game.space();
  if (space.size() > profile_cap)
    throw CapacityError("brute_force_mwmp: profile count exceeds cap");
  detail::ProfileBest best;
  parallel_ranges(space.size(), [&](std::size_t lo, std::size_t hi) {
    detail::ProfileBest local;
    ActionProfile a = space.unrank(lo);
    for (std::size_t r = lo; r < hi; ++r) {
      const double v = modified_welfare(game, y, a);
      if (detail::ProfileBest{v, r}.beats(local)) local = {v, r};
      space.next(a);
    }
#ifdef _OPENMP
#pragma omp critical(ceopt_mwmp_merge)
#endif
    {
      if (local.beats(best)) best = local;
    }
  });
  return {space.unrank(best.rank), best.value};
}

// L(y) = sum_p (weight_p + 2 * sum_j max_i y_(p,i,j)): an upper bound on how
// fast w~^y can move when every payoff argument shifts by one unit in l-inf.
double lipschitz_budget(const ScalingVector& y);

// Additive-approximation oracle contract: maximize(y) returns a profile whose
// modified welfare is within tolerance() of the true maximum.
class MwmpOracle {
 public:
  virtual ~MwmpOracle() = default;
  virtual const RegretIndexSpace& space() const = 0;
  virtual double tolerance() const = 0;
  virtual MwmpResult maximize(const ScalingVector& y) const = 0;
};

// Exact oracle for explicit games. Deviation gaps are tabulated per profile
// at construction, so each query is a pass over the profile table.
class BruteForceMwmpOracle final : public MwmpOracle {
 public:
  BruteForceMwmpOracle(ExplicitGame game, RegretIndexSpace space,
                       std::size_t profile_cap = env_cap(
                           "CEOPT_ENUM_CAP", kDefaultEnumerationCap));

  const RegretIndexSpace& space() const override { return space_; }
  double tolerance() const override { return 0.0; }
  MwmpResult maximize(const ScalingVector& y) const override;

  const ExplicitGame& game() const { return game_; }

 private:
  ExplicitGame game_;
  RegretIndexSpace space_;
  // Per profile: deviation gaps u_p(a) - u_p(j, a_-p) laid out densely with
  // their scaling-vector indices alongside.
  std::size_t gaps_per_profile_ = 0;
  std::vector<double> gap_;      // [rank * gaps_per_profile + slot]
  std::vector<int32_t> gap_idx_; // matching index into y
  std::vector<double> welfare_;  // [rank]
  std::vector<double> player_u_; // [p * P + rank]; only for egal/pareto modes
};

// Reachable prefix-sum grid of a discretized aggregative game. layers[p]
// holds the sorted coordinates of sum_{q <= p} f_q(a_q); layers[players()]
// are the aggregates of full profiles, and the union of all layers is the
// grid the dynamic program walks.
struct AggregatorGrid {
  double delta = 0.0;
  std::vector<std::vector<GridCoord>> layers;  // layers[0] = {origin}
  // transitions[p][i][a] = index in layers[p+1] of layers[p][i] + f_p(a).
  std::vector<std::vector<std::vector<int32_t>>> transitions;

  std::size_t cells() const {
    std::size_t c = 0;
    for (const auto& l : layers) c += l.size();
    return c;
  }
};

inline constexpr std::size_t kDefaultGridCellCap = 4000000;

AggregatorGrid build_aggregator_grid(
    const AggregativeGame& game,
    std::size_t cell_cap = env_cap("CEOPT_GRID_CAP", kDefaultGridCellCap));

// Dynamic program over the aggregator grid: for every reachable final
// aggregate s it maximizes sum_p v~_p(a_p, s) over profiles with that
// aggregate, then takes the best s. Exact on the discretized game. delta is
// the discretization step; games already on that grid are used as-is.
MwmpResult aggregative_dp_mwmp(
    const AggregativeGame& game, const ScalingVector& y, double delta,
    std::size_t cell_cap = env_cap("CEOPT_GRID_CAP", kDefaultGridCellCap));

namespace reference {
MwmpResult aggregative_dp_mwmp(
    const AggregativeGame& game, const ScalingVector& y, double delta,
    std::size_t cell_cap = env_cap("CEOPT_GRID_CAP", kDefaultGridCellCap));
}  // namespace reference

// Step size that keeps the dynamic program's additive error below alpha for
// every admissible y (components in [0, n]): delta = alpha / (2 n L).
double dp_delta_for_tolerance(const AggregativeGame& game,
                              const RegretIndexSpace& space, double alpha);

class AggregativeDpMwmpOracle final : public MwmpOracle {
 public:
  AggregativeDpMwmpOracle(AggregativeGame game, RegretIndexSpace space,
                          double delta,
                          std::size_t cell_cap = env_cap(
                              "CEOPT_GRID_CAP", kDefaultGridCellCap));

  const RegretIndexSpace& space() const override { return space_; }
  // 2 L n rho, where rho is the worst rounding shift the discretization
  // applied; exactly zero when the contributions were already on the grid.
  double tolerance() const override { return tolerance_; }
  MwmpResult maximize(const ScalingVector& y) const override;

  const AggregativeGame& discretized_game() const { return game_; }
  const AggregatorGrid& grid() const { return grid_; }

 private:
  AggregativeGame game_;  // discretized
  RegretIndexSpace space_;
  AggregatorGrid grid_;
  double tolerance_ = 0.0;
};

}  // namespace ceopt

#endif  // CEOPT_MWMP_HPP_
