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

#ifndef CEOPT_TESTS_TEST_UTIL_HPP_
#define CEOPT_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <vector>

#include "ceopt/game.hpp"
#include "ceopt/generate.hpp"
#include "ceopt/mwmp.hpp"
#include "ceopt/regret.hpp"

namespace testutil {

using namespace ceopt;

// Matching pennies, shifted into [0,1]: matcher wins 1 on equal coins.
inline ExplicitGame matching_pennies() {
  //            (0,0) (0,1) (1,0) (1,1)
  return ExplicitGame({2, 2}, {1, 0, 0, 1,    // player 0: matcher
                               0, 1, 1, 0});  // player 1: mismatcher
}

// Prisoner's dilemma with payoffs scaled into [0,1]; action 1 (defect)
// strictly dominates.
inline ExplicitGame prisoners_dilemma() {
  //            (C,C)  (C,D) (D,C) (D,D)
  return ExplicitGame({2, 2}, {0.6, 0.0, 1.0, 0.2,    // row player
                               0.6, 1.0, 0.0, 0.2});  // column player
}

// Every player receives value[rank(a)].
inline ExplicitGame identical_interest(const std::vector<int32_t>& m,
                                       const std::vector<double>& value) {
  ProfileSpace space(m);
  std::vector<double> u;
  for (std::size_t p = 0; p < m.size(); ++p)
    u.insert(u.end(), value.begin(), value.end());
  return ExplicitGame(m, u);
}

inline ExplicitGame zero_game(const std::vector<int32_t>& m) {
  ProfileSpace space(m);
  return ExplicitGame(
      m, std::vector<double>(m.size() * space.size(), 0.0));
}

// --- independent oracles (definition-level recomputations) ---------------

// Definition-level CE pair regret: full enumeration over all profiles with
// a_p = i, reading masses from the distribution.
inline double naive_ce_pair_regret(const ExplicitGame& g,
                                   const CorrelatedDistribution& x, int p,
                                   int i, int j) {
  const ProfileSpace& space = g.space();
  double acc = 0.0;
  ActionProfile a = space.first();
  do {
    if (a[p] != i) continue;
    ActionProfile dev = a;
    dev[p] = j;
    acc += x.mass(a) * (g.utility(p, dev) - g.utility(p, a));
  } while (space.next(a));
  return acc;
}

inline double naive_max_ce_regret(const ExplicitGame& g,
                                  const CorrelatedDistribution& x) {
  double best = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < g.players(); ++p)
    for (int i = 0; i < g.actions(p); ++i)
      for (int j = 0; j < g.actions(p); ++j)
        if (i != j) best = std::max(best, naive_ce_pair_regret(g, x, p, i, j));
  return best;
}

inline double naive_max_cce_regret(const ExplicitGame& g,
                                   const CorrelatedDistribution& x) {
  const ProfileSpace& space = g.space();
  double best = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < g.players(); ++p) {
    for (int j = 0; j < g.actions(p); ++j) {
      double acc = 0.0;
      ActionProfile a = space.first();
      do {
        ActionProfile dev = a;
        dev[p] = j;
        acc += x.mass(a) * (g.utility(p, dev) - g.utility(p, a));
      } while (space.next(a));
      best = std::max(best, acc);
    }
  }
  return best;
}

// Modified welfare straight from its definition, one term at a time.
inline double naive_modified_welfare(const ExplicitGame& g,
                                     const ScalingVector& y,
                                     const ActionProfile& a) {
  double total = 0.0;
  for (int p = 0; p < g.players(); ++p) {
    double term = objective_weight(y, p) * g.utility(p, a);
    for (int j = 0; j < g.actions(p); ++j) {
      if (j == a[p]) continue;
      ActionProfile dev = a;
      dev[p] = j;
      const double yc = y.space.mode() == RegretMode::kCceWelfare
                            ? y.v[y.space.cce_index(p, j)]
                            : y.v[y.space.deviation_index(p, a[p], j)];
      term += yc * (g.utility(p, a) - g.utility(p, dev));
    }
    total += term;
  }
  return total;
}

}  // namespace testutil

#endif  // CEOPT_TESTS_TEST_UTIL_HPP_
