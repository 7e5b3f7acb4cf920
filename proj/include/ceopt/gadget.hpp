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

#ifndef CEOPT_GADGET_HPP_
#define CEOPT_GADGET_HPP_

#include <functional>
#include <optional>
#include <string>

#include "ceopt/game.hpp"

namespace ceopt {

// Augments a base game with one extra action b_p per player and rewires the
// utilities so that the all-augmented profile b is a pure Nash equilibrium of
// welfare eps, no equilibrium has lower welfare, and every base profile with
// welfare >= opt stays a pure Nash equilibrium. The construction needs
// 0 < opt <= n and opt > eps >= opt/n.
//
// Utility rule for profile a' (with k players on their augmented action):
//   k == 0 : u'_p(a') = w(a') / n  for every p (identical interest)
//   k == 1 : u'_p(a') = opt / n for the augmented player, 0 for the rest
//   k >= 2 : u'_p(a') = eps / n if a'_p = b_p, 0 otherwise
class GadgetGame {
 public:
  GadgetGame() = default;

  int players() const { return space_.players(); }
  int32_t actions(int p) const { return space_.actions(p); }
  const ProfileSpace& space() const { return space_; }
  int32_t augmented_action(int p) const { return base_.space().actions(p); }

  double opt() const { return opt_; }
  double epsilon() const { return eps_; }
  double opt_over_n() const { return opt_over_n_; }
  double eps_over_n() const { return eps_over_n_; }

  const SuccinctGameOracle& base() const { return base_; }
  const std::optional<ExplicitGame>& base_explicit() const {
    return base_explicit_;
  }

  // All-augmented profile b = (b_1, ..., b_n).
  ActionProfile all_augmented() const;
  int augmented_count(const ActionProfile& a) const;
  bool is_base_profile(const ActionProfile& a) const {
    return augmented_count(a) == 0;
  }
  // Welfare of a profile of the base game (no augmented entries).
  double base_welfare(const ActionProfile& a) const;

  double utility(int p, const ActionProfile& a) const;

  SuccinctGameOracle to_succinct() const;

  // Replaces the utility evaluator; used to inject faults in tests.
  void set_utility_override(
      std::function<double(int, const ActionProfile&)> fn) {
    override_ = std::move(fn);
  }

  friend GadgetGame build_gadget(const SuccinctGameOracle& base, double opt,
                                 std::optional<double> eps);
  friend GadgetGame build_gadget(const ExplicitGame& base, double opt,
                                 std::optional<double> eps);

 private:
  SuccinctGameOracle base_;
  std::optional<ExplicitGame> base_explicit_;
  ProfileSpace space_;
  double opt_ = 0.0, eps_ = 0.0, opt_over_n_ = 0.0, eps_over_n_ = 0.0;
  std::function<double(int, const ActionProfile&)> override_;
};

// eps defaults to opt/n, the tightest admissible value (it minimizes the
// worst-equilibrium welfare and so maximizes the best/worst gap).
GadgetGame build_gadget(const SuccinctGameOracle& base, double opt,
                        std::optional<double> eps = std::nullopt);
GadgetGame build_gadget(const ExplicitGame& base, double opt,
                        std::optional<double> eps = std::nullopt);

// Variant parameterized by an integer threshold tau in {0, ..., n-1}: the
// case-2 payoff becomes (tau+1)/n via opt = tau+1, and eps = (tau+1)/n.
// Requires n >= 4 (the regime the construction is meant for).
GadgetGame build_ant_gadget(const ExplicitGame& base, int tau);

// Exact potential of the gadget: w(a)/n on base profiles, otherwise
// opt/n + (k-1) eps/n where k counts players on their augmented action.
double gadget_potential(const GadgetGame& g, const ActionProfile& a);

struct GadgetStructureReport {
  bool nash_at_b = true;           // no beneficial unilateral deviation from b
  bool potential_exact = true;     // du = dphi on every unilateral deviation
  bool augmented_welfare_ok = true;  // w'(a') <= w'(b) outside the base set
  ActionProfile witness;
  int witness_player = -1;
  int witness_action = -1;
  std::string failing_check;

  bool passed() const {
    return nash_at_b && potential_exact && augmented_welfare_ok;
  }
};

inline constexpr std::size_t kDefaultGadgetVerifyCap = 100000;

// Exhaustively checks the three structural claims over all profiles of the
// augmented game (parallel over profiles).
GadgetStructureReport verify_gadget_structure(
    const GadgetGame& g,
    std::size_t profile_cap = env_cap("CEOPT_GADGET_VERIFY_CAP",
                                      kDefaultGadgetVerifyCap));

namespace reference {
GadgetStructureReport verify_gadget_structure(
    const GadgetGame& g,
    std::size_t profile_cap = env_cap("CEOPT_GADGET_VERIFY_CAP",
                                      kDefaultGadgetVerifyCap));
}  // namespace reference

// Throws StructuralViolation naming the witness profile on any failure.
void require_gadget_structure(const GadgetGame& g);

}  // namespace ceopt

#endif  // CEOPT_GADGET_HPP_
