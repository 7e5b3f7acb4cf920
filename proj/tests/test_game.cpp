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
#include "ceopt/io.hpp"
#include "test_util.hpp"

using namespace ceopt;
using namespace testutil;

TEST_CASE("profile space ranks lexicographically") {
  ProfileSpace space({2, 3, 2});
  CHECK(space.size() == 12);
  CHECK(space.rank(ActionProfile{0, 0, 0}) == 0);
  CHECK(space.rank(ActionProfile{0, 0, 1}) == 1);
  CHECK(space.rank(ActionProfile{1, 2, 1}) == 11);
  ActionProfile a = space.first();
  std::size_t r = 0;
  do {
    CHECK(space.rank(a) == r);
    CHECK(space.unrank(r) == a);
    ++r;
  } while (space.next(a));
  CHECK(r == space.size());
  CHECK_THROWS_AS(space.validate(ActionProfile{0, 3, 0}), DimensionError);
  CHECK_THROWS_AS(space.validate(ActionProfile{0, 0}), DimensionError);
}

TEST_CASE("welfare of the zero game is zero everywhere") {
  const ExplicitGame g = zero_game({2, 2});
  ActionProfile a = g.space().first();
  do {
    CHECK(welfare(g, a) == 0.0);
  } while (g.space().next(a));
}

TEST_CASE("welfare of an identical-interest game is n*c") {
  const ExplicitGame g =
      identical_interest({2, 2, 2}, std::vector<double>(8, 0.375));
  CHECK(welfare(g, ActionProfile{1, 0, 1}) == doctest::Approx(3 * 0.375));
}

TEST_CASE("welfare sums the stored tensor") {
  // u_1 = 0.2 and u_2 = 0.7 at profile (0,1)
  const ExplicitGame g({2, 2}, {0.1, 0.2, 0.3, 0.4,
                                0.5, 0.7, 0.6, 0.8});
  CHECK(welfare(g, ActionProfile{0, 1}) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK_THROWS_AS(welfare(g, ActionProfile{0, 1, 0}), DimensionError);
}

TEST_CASE("welfare stays within [0, n] on random games") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ExplicitGame g = random_explicit_game(3, {2, 3, 2}, seed);
    ActionProfile a = g.space().first();
    do {
      const double w = welfare(g, a);
      CHECK(w >= 0.0);
      CHECK(w <= 3.0);
    } while (g.space().next(a));
  }
}

TEST_CASE("expected welfare of a point mass is the profile welfare") {
  const ExplicitGame g = prisoners_dilemma();
  const ActionProfile a{1, 1};
  CHECK(expected_welfare(g, CorrelatedDistribution::point_mass(a)) ==
        doctest::Approx(welfare(g, a)));
}

TEST_CASE("expected welfare averages over a uniform pair") {
  const ExplicitGame g({2, 2}, {0.1, 0.4, 0.0, 0.0,
                                0.3, 0.4, 0.0, 0.0});
  // welfares 0.4 and 0.8 at (0,0) and (0,1)
  const auto x = CorrelatedDistribution::uniform(
      {ActionProfile{0, 0}, ActionProfile{0, 1}});
  CHECK(expected_welfare(g, x) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("expected welfare matches enumeration on the uniform distribution") {
  const ExplicitGame g = random_explicit_game(2, {2, 2}, 99);
  std::vector<ActionProfile> all;
  ActionProfile a = g.space().first();
  do {
    all.push_back(a);
  } while (g.space().next(a));
  double avg = 0.0;
  for (const auto& pr : all) avg += welfare(g, pr) / 4.0;
  CHECK(expected_welfare(g, CorrelatedDistribution::uniform(all)) ==
        doctest::Approx(avg).epsilon(1e-14));
}

TEST_CASE("expected welfare rejects unnormalized distributions") {
  const ExplicitGame g = matching_pennies();
  CorrelatedDistribution x;
  x.add(ActionProfile{0, 0}, 0.5);
  CHECK_THROWS_AS(expected_welfare(g, x), NormalizationError);
  // within 1e-12 of unit mass is accepted
  CorrelatedDistribution y;
  y.add(ActionProfile{0, 0}, 0.5);
  y.add(ActionProfile{1, 1}, 0.5 + 5e-13);
  CHECK_NOTHROW(expected_welfare(g, y));
  CorrelatedDistribution z;
  z.add(ActionProfile{0, 0}, 0.5);
  z.add(ActionProfile{1, 1}, 0.5 + 1e-9);
  CHECK_THROWS_AS(expected_welfare(g, z), NormalizationError);
}

TEST_CASE("expected welfare is linear in the distribution") {
  const ExplicitGame g = random_explicit_game(2, {3, 2}, 11);
  const auto xa = random_distribution(g.space(), 1, 3);
  const auto xb = random_distribution(g.space(), 2, 4);
  for (double lam : {0.25, 0.5, 0.875}) {
    CorrelatedDistribution mix;
    for (const auto& [a, m] : xa.entries()) mix.add(a, lam * m);
    for (const auto& [a, m] : xb.entries()) mix.add(a, (1 - lam) * m);
    CHECK(expected_welfare(g, mix) ==
          doctest::Approx(lam * expected_welfare(g, xa) +
                          (1 - lam) * expected_welfare(g, xb))
              .epsilon(1e-12));
  }
}

TEST_CASE("explicit_from_succinct reproduces the oracle pointwise") {
  const ExplicitGame g = random_explicit_game(2, {2, 2}, 5);
  const ExplicitGame copy = explicit_from_succinct(SuccinctGameOracle(g));
  ActionProfile a = g.space().first();
  do {
    for (int p = 0; p < 2; ++p) CHECK(copy.utility(p, a) == g.utility(p, a));
  } while (g.space().next(a));
}

TEST_CASE("explicit_from_succinct is exact on a mid-sized random game") {
  const ExplicitGame g = random_explicit_game(4, {3, 3, 3, 3}, 17);
  const ExplicitGame copy = explicit_from_succinct(SuccinctGameOracle(g));
  for (int p = 0; p < 4; ++p)
    for (std::size_t r = 0; r < g.space().size(); ++r)
      CHECK(copy.utility_at(p, r) == g.utility_at(p, r));
}

TEST_CASE("materializing a gadget oracle yields the three-case tensor") {
  const ExplicitGame base = random_explicit_game(2, {2, 2}, 3);
  const GadgetGame g = build_gadget(base, max_profile_welfare(base));
  const ExplicitGame mat = explicit_from_succinct(g.to_succinct());
  CHECK(mat.players() == 2);
  CHECK(mat.actions(0) == 3);
  CHECK(mat.actions(1) == 3);
  ActionProfile a = mat.space().first();
  do {
    const int k = (a[0] == 2 ? 1 : 0) + (a[1] == 2 ? 1 : 0);
    for (int p = 0; p < 2; ++p) {
      double expect;
      if (k == 0)
        expect = (base.utility(0, a) + base.utility(1, a)) / 2.0;
      else if (k == 1)
        expect = a[p] == 2 ? g.opt_over_n() : 0.0;
      else
        expect = g.eps_over_n();
      CHECK(mat.utility(p, a) == expect);
    }
  } while (mat.space().next(a));
}

TEST_CASE("explicit_from_succinct honors its cap") {
  const ExplicitGame g = random_explicit_game(3, {2, 2, 2}, 2);
  CHECK_THROWS_AS(explicit_from_succinct(SuccinctGameOracle(g), 4),
                  CapacityError);
}

TEST_CASE("explicit_from_succinct rejects impure oracles") {
  int calls = 0;
  SuccinctGameOracle impure({2, 2}, [calls](int, const ActionProfile&) mutable {
    return (calls++ % 7) * 0.1;
  });
  CHECK_THROWS_AS(explicit_from_succinct(impure), ValidationError);
}

TEST_CASE("utilities outside [0,1] are rejected at construction") {
  CHECK_THROWS_AS(ExplicitGame({2}, {0.5, 1.5}), ValidationError);
  CHECK_THROWS_AS(ExplicitGame({2}, {-0.1, 0.5}), ValidationError);
}

TEST_CASE("normalize_utilities maps affinely into [0,1] and keeps the transform") {
  const std::vector<double> raw{-2.0, 0.0, 6.0, 2.0};
  auto [game, t] = normalize_utilities({4}, raw);
  CHECK(game.utility_at(0, 0) == 0.0);
  CHECK(game.utility_at(0, 2) == 1.0);
  CHECK(game.utility_at(0, 3) == doctest::Approx(0.5));
  for (double v : raw) CHECK(t.invert(t.apply(v)) == doctest::Approx(v));
  auto [flat, t2] = normalize_utilities({2}, {3.0, 3.0});
  CHECK(flat.utility_at(0, 0) == 0.0);
  CHECK(t2.scale == 0.0);
}

TEST_CASE("aggregator value sums contributions componentwise") {
  LinearPayoff zero{{{0.5}, {0.5}}, {{0.0}, {0.0}}};
  AggregativeGame gz({1, 1}, 1, 1.0, 1.0, {{{0.0}}, {{0.0}}}, zero);
  CHECK(gz.aggregator_value(ActionProfile{0, 0}) == std::vector<double>{0.0});

  // k = 1, f_1 = 2 and f_2 = -3
  LinearPayoff fam{{{0.5}, {0.5}}, {{0.0}, {0.0}}};
  AggregativeGame g({1, 1}, 1, 5.0, 3.0, {{{2.0}}, {{-3.0}}}, fam);
  CHECK(g.aggregator_value(ActionProfile{0, 0}) == std::vector<double>{-1.0});
}

TEST_CASE("unit-vector contributions produce an action histogram") {
  const int n = 3, m = 3;
  std::vector<std::vector<std::vector<double>>> f(n);
  for (int p = 0; p < n; ++p) {
    f[p].resize(m);
    for (int a = 0; a < m; ++a) {
      f[p][a].assign(m, 0.0);
      f[p][a][a] = 1.0;
    }
  }
  LinearPayoff fam{
      std::vector<std::vector<double>>(n, std::vector<double>(m, 0.5)),
      std::vector<std::vector<double>>(n, std::vector<double>(m, 0.0))};
  AggregativeGame g(std::vector<int32_t>(n, m), m, static_cast<double>(n), 1.0,
                    std::move(f), fam);
  const auto s = g.aggregator_value(ActionProfile{0, 2, 0});
  CHECK(s == std::vector<double>{2.0, 0.0, 1.0});
}

TEST_CASE("aggregator value only depends on the multiset of contributions") {
  AggregativeGame g = random_congestion_game(3, 3, 41);
  // players 0 and 1 share a contribution table; swapping their actions
  // leaves the aggregate unchanged
  CHECK(g.aggregator_value(ActionProfile{0, 2, 1}) ==
        g.aggregator_value(ActionProfile{2, 0, 1}));
}

TEST_CASE("aggregative validation rejects bad specs") {
  LinearPayoff fam{{{0.5}, {0.5}}, {{0.0}, {0.0}}};
  CHECK_THROWS_AS(AggregativeGame({1, 1}, 1, 5.0, 1.0, {{{2.0}}, {{0.0}}}, fam),
                  ValidationError);
  CHECK_THROWS_AS(AggregativeGame({1, 1}, 1, 1.0, 3.0, {{{2.0}}, {{2.0}}}, fam),
                  ValidationError);
  LinearPayoff steep{{{0.5}, {0.5}}, {{2.0}, {0.0}}};
  CHECK_THROWS_AS(
      AggregativeGame({1, 1}, 1, 1.0, 1.0, {{{0.5}}, {{0.5}}}, steep),
      ValidationError);
}

TEST_CASE("game json round-trips bit-exactly") {
  const ExplicitGame g = random_explicit_game(2, {2, 3}, 1234, 1 << 20);
  const auto back =
      std::get<ExplicitGame>(game_from_json(Json::parse(game_to_json(g).dump())));
  for (int p = 0; p < 2; ++p)
    for (std::size_t r = 0; r < g.space().size(); ++r)
      CHECK(back.utility_at(p, r) == g.utility_at(p, r));

  const AggregativeGame ag = random_aggregative_game(2, {2, 2}, 2, 77);
  const auto ag2 = std::get<AggregativeGame>(
      game_from_json(Json::parse(game_to_json(ag).dump())));
  ActionProfile a = ag.space().first();
  do {
    for (int p = 0; p < 2; ++p) CHECK(ag2.utility(p, a) == ag.utility(p, a));
  } while (ag.space().next(a));
}

TEST_CASE("distribution json round-trips bit-exactly") {
  const ExplicitGame g = random_explicit_game(2, {3, 3}, 8);
  const auto x = random_distribution(g.space(), 5, 4);
  const auto back =
      distribution_from_json(Json::parse(distribution_to_json(x).dump()));
  CHECK(back.entries() == x.entries());
}
