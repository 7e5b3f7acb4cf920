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

#include "ceopt/mwmp.hpp"

#include <algorithm>
#include <cmath>

namespace ceopt {

namespace {

void require_space_matches(const RegretIndexSpace& space, int players,
                           const char* who) {
  if (space.players() != players)
    throw DimensionError(std::string(who) + ": index space/game mismatch");
}

}  // namespace

double aggregative_modified_utility(const AggregativeGame& game,
                                    const ScalingVector& y, int p,
                                    int32_t action, const GridCoord& total) {
  const RegretIndexSpace& space = y.space;
  const double v0 = game.payoff_at(p, action, total);
  double acc = objective_weight(y, p) * v0;
  const GridCoord& qa = game.contribution_coords(p, action);
  for (int32_t j = 0; j < game.actions(p); ++j) {
    if (j == action) continue;
    GridCoord shifted = total;
    const GridCoord& qj = game.contribution_coords(p, j);
    for (int d = 0; d < game.dimension(); ++d) shifted[d] += qj[d] - qa[d];
    const double yc = space.mode() == RegretMode::kCceWelfare
                          ? y.v[space.cce_index(p, j)]
                          : y.v[space.deviation_index(p, action, j)];
    acc += yc * (v0 - game.payoff_at(p, j, shifted));
  }
  return acc;
}

double lipschitz_budget(const ScalingVector& y) {
  const RegretIndexSpace& space = y.space;
  double total = 0.0;
  for (int p = 0; p < space.players(); ++p) {
    double dev = 0.0;
    const int32_t m = space.actions(p);
    if (space.mode() == RegretMode::kCceWelfare) {
      for (int32_t j = 0; j < m; ++j) dev += y.v[space.cce_index(p, j)];
    } else {
      for (int32_t j = 0; j < m; ++j) {
        double worst = 0.0;
        for (int32_t i = 0; i < m; ++i)
          if (i != j) worst = std::max(worst, y.v[space.deviation_index(p, i, j)]);
        dev += worst;
      }
    }
    total += objective_weight(y, p) + 2.0 * dev;
  }
  return total;
}

// --- brute-force oracle --------------------------------------------------

BruteForceMwmpOracle::BruteForceMwmpOracle(ExplicitGame game,
                                           RegretIndexSpace space,
                                           std::size_t profile_cap)
    : game_(std::move(game)), space_(std::move(space)) {
  require_space_matches(space_, game_.players(), "BruteForceMwmpOracle");
  for (int p = 0; p < game_.players(); ++p)
    if (space_.actions(p) != game_.actions(p))
      throw DimensionError("BruteForceMwmpOracle: action counts differ");
  const ProfileSpace& ps = game_.space();
  const std::size_t P = ps.size();
  if (P > profile_cap)
    throw CapacityError("BruteForceMwmpOracle: profile count exceeds cap");
  const int n = game_.players();
  gaps_per_profile_ = 0;
  for (int p = 0; p < n; ++p)
    gaps_per_profile_ += static_cast<std::size_t>(game_.actions(p)) - 1;
  if (gaps_per_profile_ > 0 && P > 20000000 / gaps_per_profile_)
    throw CapacityError("BruteForceMwmpOracle: deviation table too large");

  gap_.assign(P * gaps_per_profile_, 0.0);
  gap_idx_.assign(P * gaps_per_profile_, 0);
  welfare_.assign(P, 0.0);
  const bool per_player = space_.mode() == RegretMode::kCeEgalitarian ||
                          space_.mode() == RegretMode::kCePareto;
  if (per_player) player_u_.assign(static_cast<std::size_t>(n) * P, 0.0);

  ActionProfile a = ps.first();
  std::size_t r = 0;
  do {
    std::size_t slot = r * gaps_per_profile_;
    double w = 0.0;
    for (int p = 0; p < n; ++p) {
      const double up = game_.utility_at(p, r);
      w += up;
      if (per_player) player_u_[static_cast<std::size_t>(p) * P + r] = up;
      const auto stride = static_cast<std::ptrdiff_t>(ps.stride(p));
      for (int32_t j = 0; j < game_.actions(p); ++j) {
        if (j == a[p]) continue;
        const auto dev_rank = static_cast<std::size_t>(
            static_cast<std::ptrdiff_t>(r) + (j - a[p]) * stride);
        gap_[slot] = up - game_.utility_at(p, dev_rank);
        gap_idx_[slot] = static_cast<int32_t>(
            space_.mode() == RegretMode::kCceWelfare
                ? space_.cce_index(p, j)
                : space_.deviation_index(p, a[p], j));
        ++slot;
      }
    }
    welfare_[r] = w;
    ++r;
  } while (ps.next(a));
}

MwmpResult BruteForceMwmpOracle::maximize(const ScalingVector& y) const {
  if (!(y.space == space_))
    throw DimensionError("BruteForceMwmpOracle: scaling vector space differs");
  const ProfileSpace& ps = game_.space();
  const std::size_t P = ps.size();
  const int n = game_.players();
  detail::ProfileBest best;
  parallel_ranges(
      P,
      [&](std::size_t lo, std::size_t hi) {
        detail::ProfileBest local;
        for (std::size_t r = lo; r < hi; ++r) {
          double acc;
          switch (space_.mode()) {
            case RegretMode::kCeWelfare:
            case RegretMode::kCceWelfare:
              acc = y.v[space_.objective_index()] * welfare_[r];
              break;
            case RegretMode::kCePareto:
              acc = y.v[space_.objective_index()] *
                    player_u_[static_cast<std::size_t>(space_.pareto_player()) * P + r];
              break;
            case RegretMode::kCeEgalitarian: {
              acc = 0.0;
              for (int p = 0; p < n; ++p)
                acc += y.v[space_.objective_index(p)] *
                       player_u_[static_cast<std::size_t>(p) * P + r];
              break;
            }
            default:
              acc = 0.0;
          }
          const double* g = gap_.data() + r * gaps_per_profile_;
          const int32_t* gi = gap_idx_.data() + r * gaps_per_profile_;
          for (std::size_t s = 0; s < gaps_per_profile_; ++s)
            acc += g[s] * y.v[static_cast<std::size_t>(gi[s])];
          if (detail::ProfileBest{acc, r}.beats(local)) local = {acc, r};
        }
#ifdef _OPENMP
#pragma omp critical(ceopt_bf_oracle_merge)
#endif
        {
          if (local.beats(best)) best = local;
        }
      },
      /*grain=*/8192);
  return {ps.unrank(best.rank), best.value};
}

// --- aggregator grid and dynamic program ---------------------------------

AggregatorGrid build_aggregator_grid(const AggregativeGame& game,
                                     std::size_t cell_cap) {
  if (!game.on_grid())
    throw ArgumentError("build_aggregator_grid: discretize the game first");
  const int n = game.players();
  AggregatorGrid grid;
  grid.delta = game.grid_delta();
  grid.layers.resize(n + 1);
  grid.layers[0] = {GridCoord{}};
  grid.transitions.resize(n);
  std::size_t cells = 1;
  for (int p = 0; p < n; ++p) {
    std::vector<GridCoord> next;
    next.reserve(grid.layers[p].size() * static_cast<std::size_t>(game.actions(p)));
    for (const GridCoord& c : grid.layers[p]) {
      for (int32_t a = 0; a < game.actions(p); ++a) {
        GridCoord s = c;
        const GridCoord& q = game.contribution_coords(p, a);
        for (int d = 0; d < game.dimension(); ++d) s[d] += q[d];
        next.push_back(s);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cells += next.size();
    if (cells > cell_cap)
      throw CapacityError("aggregator grid exceeds the configured cell cap");
    grid.layers[p + 1] = std::move(next);

    auto& trans = grid.transitions[p];
    trans.assign(grid.layers[p].size(),
                 std::vector<int32_t>(game.actions(p), -1));
    for (std::size_t i = 0; i < grid.layers[p].size(); ++i) {
      for (int32_t a = 0; a < game.actions(p); ++a) {
        GridCoord s = grid.layers[p][i];
        const GridCoord& q = game.contribution_coords(p, a);
        for (int d = 0; d < game.dimension(); ++d) s[d] += q[d];
        const auto it = std::lower_bound(grid.layers[p + 1].begin(),
                                         grid.layers[p + 1].end(), s);
        trans[i][a] =
            static_cast<int32_t>(it - grid.layers[p + 1].begin());
      }
    }
  }
  return grid;
}

namespace {

struct DpCell {
  double value = -std::numeric_limits<double>::infinity();
  int32_t action = std::numeric_limits<int32_t>::max();
  int32_t prev = std::numeric_limits<int32_t>::max();
};

// Fills the layered table for one target aggregate and returns the optimum
// over profiles whose aggregate equals it. Ties inside a cell prefer the
// smaller action index, then the lexicographically smaller previous cell.
double dp_for_target(const AggregativeGame& game, const ScalingVector& y,
                     const AggregatorGrid& grid, std::size_t target_idx,
                     ActionProfile* out_profile) {
  const int n = game.players();
  const GridCoord& target = grid.layers[n][target_idx];

  std::vector<std::vector<double>> vt(n);
  for (int p = 0; p < n; ++p) {
    vt[p].resize(game.actions(p));
    for (int32_t a = 0; a < game.actions(p); ++a)
      vt[p][a] = aggregative_modified_utility(game, y, p, a, target);
  }

  std::vector<std::vector<DpCell>> tab(n + 1);
  for (int p = 0; p <= n; ++p) tab[p].resize(grid.layers[p].size());
  tab[0][0] = {0.0, -1, -1};

  for (int p = 0; p < n; ++p) {
    for (std::size_t i = 0; i < tab[p].size(); ++i) {
      const double base = tab[p][i].value;
      if (base == -std::numeric_limits<double>::infinity()) continue;
      for (int32_t a = 0; a < game.actions(p); ++a) {
        const int32_t j = grid.transitions[p][i][a];
        const double cand = base + vt[p][a];
        DpCell& cell = tab[p + 1][j];
        const auto i32 = static_cast<int32_t>(i);
        if (cand > cell.value ||
            (cand == cell.value &&
             (a < cell.action || (a == cell.action && i32 < cell.prev))))
          cell = {cand, a, i32};
      }
    }
  }

  const DpCell& goal = tab[n][target_idx];
  if (out_profile && goal.value != -std::numeric_limits<double>::infinity()) {
    ActionProfile a(std::vector<int32_t>(n, 0));
    int32_t idx = static_cast<int32_t>(target_idx);
    for (int p = n - 1; p >= 0; --p) {
      a[p] = tab[p + 1][idx].action;
      idx = tab[p + 1][idx].prev;
    }
    *out_profile = std::move(a);
  }
  return goal.value;
}

struct TargetBest {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t idx = static_cast<std::size_t>(-1);
  bool beats(const TargetBest& o) const {
    return value > o.value || (value == o.value && idx < o.idx);
  }
};

MwmpResult dp_maximize(const AggregativeGame& game, const ScalingVector& y,
                       const AggregatorGrid& grid, bool parallel) {
  require_space_matches(y.space, game.players(), "aggregative_dp_mwmp");
  const auto& finals = grid.layers[game.players()];
  TargetBest best;
  auto scan = [&](std::size_t lo, std::size_t hi) {
    TargetBest local;
    for (std::size_t t = lo; t < hi; ++t) {
      const double v = dp_for_target(game, y, grid, t, nullptr);
      if (TargetBest{v, t}.beats(local)) local = {v, t};
    }
#ifdef _OPENMP
#pragma omp critical(ceopt_dp_merge)
#endif
    {
      if (local.beats(best)) best = local;
    }
  };
  if (parallel)
    parallel_ranges(finals.size(), scan, /*grain=*/1);
  else
    scan(0, finals.size());

  MwmpResult out;
  out.value = dp_for_target(game, y, grid, best.idx, &out.profile);
  return out;
}

AggregativeGame ensure_grid(const AggregativeGame& game, double delta) {
  if (game.on_grid() && game.grid_delta() == delta) return game;
  return discretize_aggregative(game, delta);
}

}  // namespace

MwmpResult aggregative_dp_mwmp(const AggregativeGame& game,
                               const ScalingVector& y, double delta,
                               std::size_t cell_cap) {
  const AggregativeGame disc = ensure_grid(game, delta);
  const AggregatorGrid grid = build_aggregator_grid(disc, cell_cap);
  return dp_maximize(disc, y, grid, /*parallel=*/true);
}

namespace reference {

MwmpResult aggregative_dp_mwmp(const AggregativeGame& game,
                               const ScalingVector& y, double delta,
                               std::size_t cell_cap) {
  const AggregativeGame disc = ensure_grid(game, delta);
  const AggregatorGrid grid = build_aggregator_grid(disc, cell_cap);
  return dp_maximize(disc, y, grid, /*parallel=*/false);
}

}  // namespace reference

double dp_delta_for_tolerance(const AggregativeGame& game,
                              const RegretIndexSpace& space, double alpha) {
  if (!(alpha > 0.0)) throw ArgumentError("dp delta: alpha must be positive");
  const int n = game.players();
  double budget = 0.0;  // L at the admissible extreme y = n everywhere
  for (int p = 0; p < n; ++p)
    budget += n * (1.0 + 2.0 * static_cast<double>(space.actions(p)));
  return alpha / (2.0 * n * budget);
}

AggregativeDpMwmpOracle::AggregativeDpMwmpOracle(AggregativeGame game,
                                                 RegretIndexSpace space,
                                                 double delta,
                                                 std::size_t cell_cap)
    : game_(ensure_grid(game, delta)), space_(std::move(space)) {
  require_space_matches(space_, game_.players(), "AggregativeDpMwmpOracle");
  for (int p = 0; p < game_.players(); ++p)
    if (space_.actions(p) != game_.actions(p))
      throw DimensionError("AggregativeDpMwmpOracle: action counts differ");
  grid_ = build_aggregator_grid(game_, cell_cap);
  const int n = game_.players();
  double budget = 0.0;
  for (int p = 0; p < n; ++p)
    budget += n * (1.0 + 2.0 * static_cast<double>(space_.actions(p)));
  tolerance_ = 2.0 * budget * n * game_.max_rounding_shift();
}

MwmpResult AggregativeDpMwmpOracle::maximize(const ScalingVector& y) const {
  if (!(y.space == space_))
    throw DimensionError("AggregativeDpMwmpOracle: scaling vector space differs");
  return dp_maximize(game_, y, grid_, /*parallel=*/true);
}

}  // namespace ceopt
