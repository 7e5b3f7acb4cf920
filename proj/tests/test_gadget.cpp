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
#include "ceopt/lp.hpp"
#include "test_util.hpp"

using namespace ceopt;
using namespace testutil;

namespace {

ActionProfile argmax_welfare(const ExplicitGame& g) {
  const ProfileSpace& space = g.space();
  ActionProfile a = space.first(), best = a;
  double bw = welfare(g, a);
  while (space.next(a)) {
    const double w = welfare(g, a);
    if (w > bw) {
      bw = w;
      best = a;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("the all-augmented profile has welfare eps") {
  const ExplicitGame base = random_explicit_game(2, {2, 2}, 1);
  const GadgetGame g = build_gadget(base, max_profile_welfare(base));
  CHECK(welfare(g, g.all_augmented()) ==
        doctest::Approx(g.epsilon()).epsilon(1e-12));
}

TEST_CASE("a base optimum profile pays opt/n to every player") {
  const ExplicitGame base = random_explicit_game(2, {3, 2}, 2);
  const double opt = max_profile_welfare(base);
  const GadgetGame g = build_gadget(base, opt);
  const ActionProfile best = argmax_welfare(base);
  for (int p = 0; p < 2; ++p)
    CHECK(g.utility(p, best) == doctest::Approx(g.opt_over_n()).epsilon(1e-15));
}

TEST_CASE("a single augmented action yields welfare opt/n") {
  const ExplicitGame base = random_explicit_game(3, {2, 2, 2}, 3);
  const GadgetGame g = build_gadget(base, max_profile_welfare(base));
  ActionProfile a{0, g.augmented_action(1), 1};
  CHECK(welfare(g, a) == g.opt_over_n());
}

TEST_CASE("gadget parameter constraints are enforced") {
  const ExplicitGame base = random_explicit_game(2, {2, 2}, 4);
  CHECK_THROWS_AS(build_gadget(base, 0.0), ArgumentError);
  CHECK_THROWS_AS(build_gadget(base, 2.5), ArgumentError);      // opt > n
  CHECK_THROWS_AS(build_gadget(base, 1.0, 1.0), ArgumentError); // eps >= opt
  CHECK_THROWS_AS(build_gadget(base, 1.0, 0.4), ArgumentError); // eps < opt/n
  CHECK_NOTHROW(build_gadget(base, 1.0, 0.5));
  CHECK_NOTHROW(build_gadget(base, 1.0, 0.9));
}

TEST_CASE("threshold variant wires eps = (tau+1)/n") {
  const ExplicitGame base = random_explicit_game(4, {2, 2, 2, 2}, 5);
  CHECK(build_ant_gadget(base, 3).epsilon() == doctest::Approx(1.0));
  CHECK(build_ant_gadget(base, 0).epsilon() == doctest::Approx(0.25));
  CHECK(build_ant_gadget(base, 0).opt() == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_ant_gadget(base, -1), ArgumentError);
  CHECK_THROWS_AS(build_ant_gadget(base, 4), ArgumentError);
  const ExplicitGame small = random_explicit_game(2, {2, 2}, 5);
  CHECK_THROWS_AS(build_ant_gadget(small, 0), ArgumentError);
}

TEST_CASE("threshold sweep brackets the true optimum") {
  const ExplicitGame base = random_explicit_game(4, {2, 2, 2, 2}, 6);
  const double opt = max_profile_welfare(base);
  const int n = 4;
  for (int tau = 0; tau < n; ++tau) {
    const GadgetGame g = build_ant_gadget(base, tau);
    const bool eps_brackets =
        g.epsilon() >= opt / n - 1e-12 && g.epsilon() <= (opt + 1.0) / n + 1e-12;
    const bool tau_brackets = tau >= opt - 1.0 - 1e-12 && tau <= opt + 1e-12;
    CHECK(eps_brackets == tau_brackets);
  }
}

TEST_CASE("potential values follow the two-case rule") {
  const ExplicitGame base = random_explicit_game(3, {2, 2, 2}, 7);
  const double opt = max_profile_welfare(base);
  const GadgetGame g = build_gadget(base, opt);
  ActionProfile in_base{0, 1, 0};
  CHECK(gadget_potential(g, in_base) ==
        doctest::Approx(welfare(base, in_base) / 3.0).epsilon(1e-15));
  CHECK(gadget_potential(g, g.all_augmented()) ==
        doctest::Approx(g.opt_over_n() + 2.0 * g.eps_over_n()).epsilon(1e-15));
  ActionProfile one_aug{g.augmented_action(0), 1, 0};
  CHECK(gadget_potential(g, one_aug) == g.opt_over_n());
}

TEST_CASE("gadget structure verifies on random bases") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const ExplicitGame base = random_explicit_game(2, {2, 2}, 100 + seed);
    const double opt = max_profile_welfare(base);
    if (opt <= 0.0) continue;
    const GadgetGame g = build_gadget(base, opt);
    const auto rep = verify_gadget_structure(g);
    CHECK(rep.nash_at_b);
    CHECK(rep.potential_exact);
    CHECK(rep.augmented_welfare_ok);
    CHECK_NOTHROW(require_gadget_structure(g));
    // also valid with the equilibrium-level threshold
    const ExplicitGame mat = explicit_from_succinct(g.to_succinct());
    (void)mat;
  }
}

TEST_CASE("the LP-threshold convenience choice also verifies") {
  const ExplicitGame base = random_explicit_game(2, {2, 2}, 42);
  const double lp_opt =
      optimal_equilibrium(base, EqConcept::kCce, LpObjective::kWelfare)
          .objective_value;
  REQUIRE(lp_opt > 0.0);
  const GadgetGame g = build_gadget(base, lp_opt);
  CHECK(verify_gadget_structure(g).passed());
}

TEST_CASE("corrupting a case-3 utility breaks the potential with a witness") {
  const ExplicitGame base = random_explicit_game(2, {2, 2}, 9);
  GadgetGame g = build_gadget(base, max_profile_welfare(base));
  const GadgetGame clean = g;
  g.set_utility_override([clean](int p, const ActionProfile& a) {
    if (clean.augmented_count(a) >= 2 && a[p] == clean.augmented_action(p))
      return std::min(1.0, clean.eps_over_n() + 0.05);
    return clean.utility(p, a);
  });
  const auto rep = verify_gadget_structure(g);
  CHECK(!rep.potential_exact);
  CHECK(rep.failing_check == "potential");
  CHECK(!rep.witness.actions.empty());
  CHECK_THROWS_AS(require_gadget_structure(g), StructuralViolation);
}

TEST_CASE("augmented welfare cap is tight exactly when eps = opt/n") {
  const ExplicitGame base = identical_interest({2, 2}, {0.25, 0.5, 0.5, 0.75});
  const double opt = 1.5;
  const GadgetGame tight = build_gadget(base, opt);  // eps = opt/2
  ActionProfile one_aug{tight.augmented_action(0), 0};
  CHECK(welfare(tight, one_aug) ==
        doctest::Approx(welfare(tight, tight.all_augmented())).epsilon(1e-12));
  const GadgetGame loose = build_gadget(base, opt, 1.0);  // eps > opt/2
  ActionProfile one_aug2{loose.augmented_action(0), 0};
  CHECK(welfare(loose, one_aug2) <
        welfare(loose, loose.all_augmented()) - 1e-9);
  CHECK(verify_gadget_structure(tight).passed());
  CHECK(verify_gadget_structure(loose).passed());
}

TEST_CASE("a base profile reaching opt is a pure Nash equilibrium of the gadget") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const ExplicitGame base = random_explicit_game(3, {2, 2, 2}, 300 + seed);
    const double opt = max_profile_welfare(base);
    if (opt <= 0.0) continue;
    const GadgetGame g = build_gadget(base, opt);
    const auto x = CorrelatedDistribution::point_mass(argmax_welfare(base));
    CHECK(max_cce_regret(g, x) <= 1e-12);
  }
}

TEST_CASE("gadget oracle is pure with values in [0,1]") {
  const ExplicitGame base = random_explicit_game(2, {2, 2}, 11);
  const GadgetGame g = build_gadget(base, max_profile_welfare(base));
  ActionProfile a = g.space().first();
  do {
    for (int p = 0; p < 2; ++p) {
      const double u1 = g.utility(p, a);
      const double u2 = g.utility(p, a);
      CHECK(u1 == u2);
      CHECK(u1 >= 0.0);
      CHECK(u1 <= 1.0);
    }
  } while (g.space().next(a));
}

TEST_CASE("parallel and reference gadget verification agree") {
  const ExplicitGame base = random_explicit_game(3, {2, 2, 2}, 12);
  const GadgetGame g = build_gadget(base, max_profile_welfare(base));
  const auto par = verify_gadget_structure(g);
  const auto ser = reference::verify_gadget_structure(g);
  CHECK(par.passed() == ser.passed());
  CHECK(par.nash_at_b == ser.nash_at_b);
  CHECK(par.potential_exact == ser.potential_exact);
  CHECK(par.augmented_welfare_ok == ser.augmented_welfare_ok);

  GadgetGame bad = g;
  const GadgetGame clean = g;
  bad.set_utility_override([clean](int p, const ActionProfile& a) {
    if (clean.augmented_count(a) >= 2 && a[p] == clean.augmented_action(p))
      return std::min(1.0, clean.eps_over_n() + 0.03);
    return clean.utility(p, a);
  });
  const auto par_bad = verify_gadget_structure(bad);
  const auto ser_bad = reference::verify_gadget_structure(bad);
  CHECK(par_bad.passed() == ser_bad.passed());
  CHECK(par_bad.witness == ser_bad.witness);
  CHECK(par_bad.failing_check == ser_bad.failing_check);
}

TEST_CASE("verification enforces its enumeration cap") {
  const ExplicitGame base = random_explicit_game(2, {2, 2}, 13);
  const GadgetGame g = build_gadget(base, max_profile_welfare(base));
  CHECK_THROWS_AS(verify_gadget_structure(g, 4), CapacityError);
}
