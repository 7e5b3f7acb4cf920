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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ceopt/gadget.hpp"
#include "test_util.hpp"

using namespace ceopt;
using namespace testutil;

namespace {

CorrelatedDistribution uniform_over_all(const ExplicitGame& g) {
  std::vector<ActionProfile> all;
  ActionProfile a = g.space().first();
  do {
    all.push_back(a);
  } while (g.space().next(a));
  return CorrelatedDistribution::uniform(all);
}

}  // namespace

TEST_CASE("uniform matching pennies has zero regret for every pair") {
  const ExplicitGame g = matching_pennies();
  const auto x = uniform_over_all(g);
  for (int p = 0; p < 2; ++p)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (i != j)
          CHECK(ce_pair_regret(g, x, p, i, j) == doctest::Approx(0.0));
  CHECK(max_ce_regret(g, x) == doctest::Approx(0.0));
}

TEST_CASE("dominated recommendation carries mass-weighted regret") {
  const ExplicitGame g = prisoners_dilemma();  // action 1 dominates action 0
  CorrelatedDistribution x;
  x.add(ActionProfile{0, 1}, 0.3);
  x.add(ActionProfile{1, 1}, 0.7);
  // switching the recommendation 0 -> 1 gains u_0(1,1) - u_0(0,1) on the
  // 0.3 mass where player 0 is told to cooperate
  const double gain = g.utility(0, ActionProfile{1, 1}) -
                      g.utility(0, ActionProfile{0, 1});
  CHECK(ce_pair_regret(g, x, 0, 0, 1) ==
        doctest::Approx(0.3 * gain).epsilon(1e-12));
}

TEST_CASE("pair regret is an empty sum without mass on the recommendation") {
  const ExplicitGame g = prisoners_dilemma();
  const auto x = CorrelatedDistribution::point_mass(ActionProfile{1, 1});
  CHECK(ce_pair_regret(g, x, 0, 0, 1) == 0.0);
}

TEST_CASE("pair regret rejects i == j and bad arguments") {
  const ExplicitGame g = matching_pennies();
  const auto x = CorrelatedDistribution::point_mass(ActionProfile{0, 0});
  CHECK_THROWS_AS(ce_pair_regret(g, x, 0, 1, 1), ArgumentError);
  CHECK_THROWS_AS(ce_pair_regret(g, x, 2, 0, 1), ArgumentError);
  CHECK_THROWS_AS(cce_deviation_regret(g, x, 0, 5), ArgumentError);
}

TEST_CASE("a pure Nash point mass has nonpositive deviation regret") {
  const ExplicitGame g = prisoners_dilemma();
  const auto x = CorrelatedDistribution::point_mass(ActionProfile{1, 1});
  for (int p = 0; p < 2; ++p)
    for (int j = 0; j < 2; ++j)
      CHECK(cce_deviation_regret(g, x, p, j) <= 0.0);
}

TEST_CASE("deviating from the all-augmented gadget profile loses eps/n") {
  const ExplicitGame base = random_explicit_game(3, {2, 2, 2}, 21);
  const GadgetGame g = build_gadget(base, max_profile_welfare(base));
  const auto x = CorrelatedDistribution::point_mass(g.all_augmented());
  for (int p = 0; p < 3; ++p) {
    for (int32_t j = 0; j < g.actions(p); ++j) {
      if (j == g.augmented_action(p)) continue;
      CHECK(cce_deviation_regret(g, x, p, j) ==
            doctest::Approx(-g.eps_over_n()).epsilon(1e-12));
    }
  }
}

TEST_CASE("deviation regret of a two-profile mixture averages the gaps") {
  const ExplicitGame g = random_explicit_game(2, {2, 2}, 4);
  const ActionProfile a{0, 0}, b{1, 1};
  const auto x = CorrelatedDistribution::uniform({a, b});
  for (int p = 0; p < 2; ++p) {
    for (int j = 0; j < 2; ++j) {
      ActionProfile da = a, db = b;
      da[p] = j;
      db[p] = j;
      const double gap_a = g.utility(p, da) - g.utility(p, a);
      const double gap_b = g.utility(p, db) - g.utility(p, b);
      CHECK(cce_deviation_regret(g, x, p, j) ==
            doctest::Approx(0.5 * gap_a + 0.5 * gap_b).epsilon(1e-12));
    }
  }
}

TEST_CASE("identical-interest optimum is deviation-proof") {
  const ExplicitGame g = identical_interest({2, 2}, {0.2, 0.9, 0.4, 0.1});
  const auto x = CorrelatedDistribution::point_mass(ActionProfile{0, 1});
  CHECK(max_ce_regret(g, x) <= 0.0);
  CHECK(max_cce_regret(g, x) <= 0.0);
}

TEST_CASE("max regrets match the enumeration oracle on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ExplicitGame g = random_explicit_game(2, {2, 2}, 1000 + seed);
    const auto x = random_distribution(g.space(), seed, 3);
    CHECK(max_ce_regret(g, x) ==
          doctest::Approx(naive_max_ce_regret(g, x)).epsilon(1e-12));
    CHECK(max_cce_regret(g, x) ==
          doctest::Approx(naive_max_cce_regret(g, x)).epsilon(1e-12));
  }
}

TEST_CASE("parallel and reference verification agree bit for bit") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ExplicitGame g = random_explicit_game(3, {2, 3, 2}, 500 + seed);
    const auto x = random_distribution(g.space(), seed, 6);
    const auto par_ce = max_ce_regret_report(g, x);
    const auto ser_ce = reference::max_ce_regret_report(g, x);
    CHECK(par_ce.max_regret == ser_ce.max_regret);
    CHECK(par_ce.player == ser_ce.player);
    CHECK(par_ce.from == ser_ce.from);
    CHECK(par_ce.to == ser_ce.to);
    const auto par_cce = max_cce_regret_report(g, x);
    const auto ser_cce = reference::max_cce_regret_report(g, x);
    CHECK(par_cce.max_regret == ser_cce.max_regret);
    CHECK(par_cce.player == ser_cce.player);
    CHECK(par_cce.to == ser_cce.to);
  }
}

TEST_CASE("regret operators are linear in the distribution") {
  const ExplicitGame g = random_explicit_game(2, {3, 2}, 77);
  const auto xa = random_distribution(g.space(), 3, 3);
  const auto xb = random_distribution(g.space(), 4, 4);
  const double lam = 0.375;
  CorrelatedDistribution mix;
  for (const auto& [a, m] : xa.entries()) mix.add(a, lam * m);
  for (const auto& [a, m] : xb.entries()) mix.add(a, (1 - lam) * m);
  for (int p = 0; p < 2; ++p) {
    for (int j = 0; j < g.actions(p); ++j) {
      CHECK(cce_deviation_regret(g, mix, p, j) ==
            doctest::Approx(lam * cce_deviation_regret(g, xa, p, j) +
                            (1 - lam) * cce_deviation_regret(g, xb, p, j))
                .epsilon(1e-12));
      for (int i = 0; i < g.actions(p); ++i) {
        if (i == j) continue;
        CHECK(ce_pair_regret(g, mix, p, i, j) ==
              doctest::Approx(lam * ce_pair_regret(g, xa, p, i, j) +
                              (1 - lam) * ce_pair_regret(g, xb, p, i, j))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("regret vector dimensions follow the mode") {
  const ExplicitGame g22 = random_explicit_game(2, {2, 2}, 1);
  CHECK(make_regret_space(RegretMode::kCeWelfare, g22).dim() == 5);
  CHECK(make_regret_space(RegretMode::kCceWelfare, g22).dim() == 5);  // nm+1
  CHECK(make_regret_space(RegretMode::kCeEgalitarian, g22).dim() == 6);
  CHECK(make_regret_space(RegretMode::kCePareto, g22, 1).dim() == 5);
  const ExplicitGame g33 = random_explicit_game(3, {3, 3, 3}, 1);
  CHECK(make_regret_space(RegretMode::kCeWelfare, g33).dim() == 19);
  CHECK(make_regret_space(RegretMode::kCceWelfare, g33).dim() == 10);
  CHECK(make_regret_space(RegretMode::kCeEgalitarian, g33).dim() == 21);
  // heterogeneous action counts: sum_p m_p (m_p - 1) + 1
  const ExplicitGame mixed = random_explicit_game(2, {2, 3}, 1);
  CHECK(make_regret_space(RegretMode::kCeWelfare, mixed).dim() == 2 + 6 + 1);
}

TEST_CASE("regret vector at an identical-interest optimum is nonpositive") {
  const ExplicitGame g = identical_interest({2, 2}, {0.2, 0.9, 0.4, 0.1});
  const ActionProfile best{0, 1};
  const auto r =
      build_regret_vector(g, best, welfare(g, best), RegretMode::kCeWelfare);
  for (double v : r.v) CHECK(v <= 0.0);
  CHECK(r.v[r.space.objective_index()] == 0.0);
}

TEST_CASE("regret vector components recompute from the tensor") {
  const ExplicitGame g = random_explicit_game(3, {2, 2, 2}, 31);
  const ActionProfile a{1, 0, 1};
  const double target = 1.25;
  const auto space = make_regret_space(RegretMode::kCeWelfare, g);
  const auto r = build_regret_vector(g, a, target, space);
  for (int p = 0; p < 3; ++p) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        if (i == j) continue;
        ActionProfile dev = a;
        dev[p] = j;
        const double expect =
            (a[p] == i) ? g.utility(p, dev) - g.utility(p, a) : 0.0;
        CHECK(r.v[space.deviation_index(p, i, j)] == expect);
      }
    }
  }
  CHECK(r.v[space.objective_index()] == target - welfare(g, a));
}

TEST_CASE("regret vector has one nonzero deviation block row per player") {
  const ExplicitGame g = random_explicit_game(2, {3, 3}, 13);
  const ActionProfile a{2, 0};
  const auto space = make_regret_space(RegretMode::kCeWelfare, g);
  const auto r = build_regret_vector(g, a, 0.5, space);
  for (int p = 0; p < 2; ++p)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j && i != a[p])
          CHECK(r.v[space.deviation_index(p, i, j)] == 0.0);
}

TEST_CASE("egalitarian and pareto objective components") {
  const ExplicitGame g = random_explicit_game(2, {2, 2}, 9);
  const ActionProfile a{0, 1};
  const double target = 0.75;
  const auto egal =
      build_regret_vector(g, a, target, RegretMode::kCeEgalitarian);
  for (int p = 0; p < 2; ++p)
    CHECK(egal.v[egal.space.objective_index(p)] == target - g.utility(p, a));
  const auto par = build_regret_vector(g, a, target, RegretMode::kCePareto, 1);
  CHECK(par.v[par.space.objective_index()] == target - g.utility(1, a));
}

TEST_CASE("scaled regret is the inner product over the shared index space") {
  const ExplicitGame g = random_explicit_game(2, {2, 2}, 66);
  const auto space = make_regret_space(RegretMode::kCeWelfare, g);
  const ActionProfile a{1, 0};
  const double target = 0.9;
  const auto r = build_regret_vector(g, a, target, space);

  const ScalingVector zero(space, std::vector<double>(space.dim(), 0.0));
  CHECK(scaled_regret(zero, r) == 0.0);

  std::vector<double> unit(space.dim(), 0.0);
  unit[space.objective_index()] = 1.0;
  CHECK(scaled_regret(ScalingVector(space, unit), r) ==
        doctest::Approx(target - welfare(g, a)).epsilon(1e-15));

  const auto y = random_scaling_vector(space, 5, 2.0);
  double naive = 0.0;
  for (int i = 0; i < space.dim(); ++i) naive += y.v[i] * r.v[i];
  CHECK(scaled_regret(y, r) == naive);

  const auto cce_space = make_regret_space(RegretMode::kCceWelfare, g);
  const auto rc = build_regret_vector(g, a, target, cce_space);
  CHECK_THROWS_AS(scaled_regret(y, rc), DimensionError);
}

TEST_CASE("scaling vectors reject negative components") {
  const ExplicitGame g = random_explicit_game(2, {2, 2}, 1);
  const auto space = make_regret_space(RegretMode::kCeWelfare, g);
  std::vector<double> v(space.dim(), 0.1);
  v[2] = -0.5;
  CHECK_THROWS_AS(ScalingVector(space, v), ArgumentError);
}

TEST_CASE("an exact correlated equilibrium is also coarse") {
  const ExplicitGame g = matching_pennies();
  const auto x = uniform_over_all(g);
  REQUIRE(max_ce_regret(g, x) <= 1e-12);
  CHECK(max_cce_regret(g, x) <= 1e-12);
}
