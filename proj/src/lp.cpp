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

#include "ceopt/lp.hpp"

#include <optional>
#include <sstream>
#include <vector>

#include "ceopt/regret.hpp"
#include "ceopt/simplex.hpp"

namespace ceopt {

namespace {

constexpr double kFloatEps = 1e-9;

// Utilities of the whole game as exact rationals, if every entry reconstructs.
std::optional<std::vector<Rational>> rational_utilities(const ExplicitGame& g) {
  std::vector<Rational> u;
  u.reserve(g.utilities().size());
  for (double v : g.utilities()) {
    auto r = rationalize(v);
    if (!r) return std::nullopt;
    u.push_back(std::move(*r));
  }
  return u;
}

template <class T>
struct BuiltLp {
  DenseLp<T> lp;
  std::size_t eq_rows = 0;
  bool epigraph = false;
};

// x(a) >= 0 per profile, sum_a x(a) = 1, one row per deviation constraint.
// Egalitarian maximization appends an epigraph variable t with rows
// t - u_p(x) <= 0 and objective t.
template <class T>
BuiltLp<T> build_lp(const ExplicitGame& game, const std::vector<T>& u,
                    EqConcept kind, LpObjective objective,
                    LpDirection direction, int q) {
  const ProfileSpace& space = game.space();
  const std::size_t P = space.size();
  const int n = game.players();
  BuiltLp<T> built;
  built.epigraph = objective == LpObjective::kEgalitarian;
  const std::size_t nv = P + (built.epigraph ? 1 : 0);

  DenseLp<T>& lp = built.lp;
  lp.num_vars = static_cast<int>(nv);
  lp.objective.assign(nv, T(0));

  auto val = [&](int p, std::size_t rank) -> const T& {
    return u[static_cast<std::size_t>(p) * P + rank];
  };

  // Deviation rows, in the regret module's flat (p,i,j) / (p,j) order.
  std::vector<typename DenseLp<T>::Row> dev_rows;
  if (kind == EqConcept::kCe) {
    for (int p = 0; p < n; ++p)
      for (int32_t i = 0; i < space.actions(p); ++i)
        for (int32_t j = 0; j < space.actions(p); ++j)
          if (i != j)
            dev_rows.push_back({std::vector<T>(nv, T(0)), '<', T(0)});
  } else {
    for (int p = 0; p < n; ++p)
      for (int32_t j = 0; j < space.actions(p); ++j)
        dev_rows.push_back({std::vector<T>(nv, T(0)), '<', T(0)});
  }
  built.eq_rows = dev_rows.size();

  ActionProfile a = space.first();
  std::size_t rank = 0;
  do {
    std::size_t row = 0;
    for (int p = 0; p < n; ++p) {
      const int32_t m = space.actions(p);
      const auto stride = static_cast<std::ptrdiff_t>(space.stride(p));
      auto dev_rank = [&](int32_t j) {
        return static_cast<std::size_t>(static_cast<std::ptrdiff_t>(rank) +
                                        (j - a[p]) * stride);
      };
      if (kind == EqConcept::kCe) {
        // Row block for player p starts at offset sum_{p'<p} m'(m'-1); only
        // the rows with i == a_p receive a coefficient at this profile.
        for (int32_t j = 0; j < m; ++j) {
          if (j == a[p]) continue;
          const std::size_t r =
              row + static_cast<std::size_t>(a[p]) * (m - 1) +
              static_cast<std::size_t>(j > a[p] ? j - 1 : j);
          dev_rows[r].a[rank] = val(p, dev_rank(j)) - val(p, rank);
        }
        row += static_cast<std::size_t>(m) * (m - 1);
      } else {
        for (int32_t j = 0; j < m; ++j) {
          if (j != a[p])
            dev_rows[row + j].a[rank] = val(p, dev_rank(j)) - val(p, rank);
        }
        row += static_cast<std::size_t>(m);
      }
    }
    ++rank;
  } while (space.next(a));

  // Objective.
  const T sign = direction == LpDirection::kMax ? T(1) : T(-1);
  switch (objective) {
    case LpObjective::kWelfare:
      for (std::size_t r = 0; r < P; ++r) {
        T w(0);
        for (int p = 0; p < n; ++p) w += val(p, r);
        lp.objective[r] = sign * w;
      }
      break;
    case LpObjective::kPlayerUtility:
      for (std::size_t r = 0; r < P; ++r) lp.objective[r] = sign * val(q, r);
      break;
    case LpObjective::kEgalitarian: {
      lp.objective[P] = T(1);  // maximize t; kMin never reaches here
      for (int p = 0; p < n; ++p) {
        typename DenseLp<T>::Row epi{std::vector<T>(nv, T(0)), '<', T(0)};
        for (std::size_t r = 0; r < P; ++r) epi.a[r] = -val(p, r);
        epi.a[P] = T(1);
        lp.rows.push_back(std::move(epi));
      }
      break;
    }
  }

  typename DenseLp<T>::Row norm{std::vector<T>(nv, T(0)), '=', T(1)};
  for (std::size_t r = 0; r < P; ++r) norm.a[r] = T(1);
  lp.rows.push_back(std::move(norm));
  for (auto& r : dev_rows) lp.rows.push_back(std::move(r));
  return built;
}

LpSolution finish(const ExplicitGame& game, EqConcept kind,
                  LpObjective objective, LpDirection direction, int q,
                  CorrelatedDistribution dist, double value, bool exact,
                  Rational value_exact, std::size_t eq_rows) {
  LpSolution out;
  out.distribution = std::move(dist);
  out.objective_value = value;
  out.exact = exact;
  out.objective_exact = std::move(value_exact);
  out.eq_concept = kind;
  out.objective = objective;
  out.direction = direction;
  out.player = q;
  out.equilibrium_constraints = eq_rows;

  // Basic solutions have at most #rows nonzero variables; the rows are the
  // polytope constraints plus the normalization equality.
  if (out.distribution.support_size() > eq_rows + 1)
    throw InternalError("lp: solution support exceeds the basic-solution bound");
  const double viol = kind == EqConcept::kCe
                          ? max_ce_regret(game, out.distribution)
                          : max_cce_regret(game, out.distribution);
  if (viol > 10 * kFloatEps)
    throw InternalError("lp: returned distribution fails regret verification");
  return out;
}

LpSolution solve_rational(const ExplicitGame& game,
                          const std::vector<Rational>& u, EqConcept kind,
                          LpObjective objective, LpDirection direction, int q) {
  auto built = build_lp<Rational>(game, u, kind, objective, direction, q);
  auto sol = solve_dense_lp<Rational>(built.lp, Rational(0));
  if (sol.status != LpStatus::kOptimal)
    throw InternalError("lp: equilibrium polytope reported infeasible/unbounded");
  const ProfileSpace& space = game.space();
  CorrelatedDistribution dist;
  for (std::size_t r = 0; r < space.size(); ++r) {
    if (sol.x[r] > 0) {
      const double mass = to_double(sol.x[r]);
      if (mass > 0.0) dist.add(space.unrank(r), mass);
    }
  }
  Rational obj = sol.objective;
  if (direction == LpDirection::kMin) obj = -obj;
  const std::size_t rows =
      built.eq_rows + (built.epigraph ? game.players() : 0);
  return finish(game, kind, objective, direction, q, std::move(dist),
                to_double(obj), /*exact=*/true, obj, rows);
}

LpSolution solve_float(const ExplicitGame& game, EqConcept kind,
                       LpObjective objective, LpDirection direction, int q) {
  std::vector<double> u = game.utilities();
  auto built = build_lp<double>(game, u, kind, objective, direction, q);
  auto sol = solve_dense_lp<double>(built.lp, kFloatEps);
  if (sol.status != LpStatus::kOptimal)
    throw InternalError("lp: equilibrium polytope reported infeasible/unbounded");
  const ProfileSpace& space = game.space();
  double total = 0.0;
  for (std::size_t r = 0; r < space.size(); ++r)
    if (sol.x[r] > 1e-12) total += sol.x[r];
  CorrelatedDistribution dist;
  for (std::size_t r = 0; r < space.size(); ++r)
    if (sol.x[r] > 1e-12) dist.add(space.unrank(r), sol.x[r] / total);
  double obj = sol.objective;
  if (direction == LpDirection::kMin) obj = -obj;
  const std::size_t rows =
      built.eq_rows + (built.epigraph ? game.players() : 0);
  return finish(game, kind, objective, direction, q, std::move(dist), obj,
                /*exact=*/false, Rational(0), rows);
}

}  // namespace

LpSolution solve_equilibrium_lp(const ExplicitGame& game, EqConcept kind,
                                LpObjective objective, LpDirection direction,
                                int player, LpArithmetic arithmetic,
                                std::size_t profile_cap) {
  const std::size_t P = game.space().size();
  if (P > profile_cap) {
    std::ostringstream os;
    os << "equilibrium lp: " << P << " profiles exceed cap " << profile_cap;
    throw CapacityError(os.str());
  }
  if (objective == LpObjective::kPlayerUtility &&
      (player < 0 || player >= game.players()))
    throw ArgumentError("equilibrium lp: player objective needs a valid player");

  // Worst egalitarian value: min_x min_p u_p(x) = min_p (min_x u_p(x)).
  if (objective == LpObjective::kEgalitarian && direction == LpDirection::kMin) {
    std::optional<LpSolution> best;
    for (int p = 0; p < game.players(); ++p) {
      LpSolution s =
          solve_equilibrium_lp(game, kind, LpObjective::kPlayerUtility,
                               LpDirection::kMin, p, arithmetic, profile_cap);
      if (!best || s.objective_value < best->objective_value) best = std::move(s);
    }
    best->objective = LpObjective::kEgalitarian;
    best->player = -1;
    return std::move(*best);
  }

  if (arithmetic != LpArithmetic::kFloat) {
    auto u = rational_utilities(game);
    if (u) return solve_rational(game, *u, kind, objective, direction, player);
    if (arithmetic == LpArithmetic::kRational)
      throw ArgumentError(
          "equilibrium lp: utilities do not reconstruct as small rationals; "
          "use float arithmetic");
  }
  return solve_float(game, kind, objective, direction, player);
}

LpSolution optimal_equilibrium(const ExplicitGame& game, EqConcept kind,
                               LpObjective objective, int player,
                               LpArithmetic arithmetic,
                               std::size_t profile_cap) {
  return solve_equilibrium_lp(game, kind, objective, LpDirection::kMax, player,
                              arithmetic, profile_cap);
}

LpSolution worst_equilibrium(const ExplicitGame& game, EqConcept kind,
                             LpObjective objective, int player,
                             LpArithmetic arithmetic, std::size_t profile_cap) {
  return solve_equilibrium_lp(game, kind, objective, LpDirection::kMin, player,
                              arithmetic, profile_cap);
}

}  // namespace ceopt
