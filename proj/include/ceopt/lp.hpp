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

#ifndef CEOPT_LP_HPP_
#define CEOPT_LP_HPP_

#include <cstddef>

#include "ceopt/game.hpp"
#include "ceopt/rational.hpp"

namespace ceopt {

enum class EqConcept { kCe, kCce };
enum class LpObjective { kWelfare, kEgalitarian, kPlayerUtility };
enum class LpDirection { kMax, kMin };

// kAuto solves exactly when every utility reconstructs as a small rational
// (see rationalize) and falls back to floating point otherwise.
enum class LpArithmetic { kAuto, kRational, kFloat };

inline constexpr std::size_t kDefaultLpProfileCap = 5000;

struct LpSolution {
  CorrelatedDistribution distribution;
  double objective_value = 0.0;
  bool exact = false;              // solved in exact rational arithmetic
  Rational objective_exact = 0;    // meaningful when exact
  EqConcept eq_concept = EqConcept::kCe;
  LpObjective objective = LpObjective::kWelfare;
  LpDirection direction = LpDirection::kMax;
  int player = -1;                         // for kPlayerUtility
  std::size_t equilibrium_constraints = 0; // rows defining the polytope
};

// Optimizes the chosen objective over the CE or CCE polytope of an explicit
// game by linear programming over the distribution weights x(a). The returned
// distribution is a basic solution, so its support has at most
// equilibrium_constraints + 1 profiles, and it re-verifies against the regret
// module to 1e-9 before being returned.
LpSolution optimal_equilibrium(
    const ExplicitGame& game, EqConcept concept_kind, LpObjective objective,
    int player = -1, LpArithmetic arithmetic = LpArithmetic::kAuto,
    std::size_t profile_cap = env_cap("CEOPT_LP_CAP", kDefaultLpProfileCap));

// Same polytope, minimizing. For the egalitarian objective this minimizes
// min_p u_p(x), solved as the least of the per-player minimization LPs.
LpSolution worst_equilibrium(
    const ExplicitGame& game, EqConcept concept_kind, LpObjective objective,
    int player = -1, LpArithmetic arithmetic = LpArithmetic::kAuto,
    std::size_t profile_cap = env_cap("CEOPT_LP_CAP", kDefaultLpProfileCap));

LpSolution solve_equilibrium_lp(
    const ExplicitGame& game, EqConcept concept_kind, LpObjective objective,
    LpDirection direction, int player = -1,
    LpArithmetic arithmetic = LpArithmetic::kAuto,
    std::size_t profile_cap = env_cap("CEOPT_LP_CAP", kDefaultLpProfileCap));

}  // namespace ceopt

#endif  // CEOPT_LP_HPP_
