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

#ifndef CEOPT_GAME_HPP_
#define CEOPT_GAME_HPP_

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "ceopt/common.hpp"

namespace ceopt {

// One action index per player.
struct ActionProfile {
  std::vector<int32_t> actions;

  ActionProfile() = default;
  explicit ActionProfile(std::vector<int32_t> a) : actions(std::move(a)) {}
  ActionProfile(std::initializer_list<int32_t> a) : actions(a) {}

  int32_t& operator[](std::size_t p) { return actions[p]; }
  int32_t operator[](std::size_t p) const { return actions[p]; }
  std::size_t size() const { return actions.size(); }

  auto operator<=>(const ActionProfile&) const = default;
};

// The mixed-radix space of action profiles for a fixed vector of per-player
// action counts. Profiles are ordered lexicographically with player 0 most
// significant; rank() and unrank() convert between profiles and that order.
class ProfileSpace {
 public:
  ProfileSpace() = default;
  explicit ProfileSpace(std::vector<int32_t> action_counts);

  int players() const { return static_cast<int>(counts_.size()); }
  int32_t actions(int p) const { return counts_[p]; }
  const std::vector<int32_t>& action_counts() const { return counts_; }

  // Number of profiles. Throws CapacityError if it does not fit in 62 bits.
  std::size_t size() const { return size_; }

  std::size_t stride(int p) const { return strides_[p]; }
  std::size_t rank(const ActionProfile& a) const;
  ActionProfile unrank(std::size_t r) const;

  ActionProfile first() const {
    return ActionProfile(std::vector<int32_t>(counts_.size(), 0));
  }
  // Odometer step in lexicographic order; false once the last profile rolls
  // over back to the first.
  bool next(ActionProfile& a) const;

  bool contains(const ActionProfile& a) const;
  void validate(const ActionProfile& a) const;  // throws DimensionError

  bool operator==(const ProfileSpace& o) const { return counts_ == o.counts_; }

 private:
  std::vector<int32_t> counts_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

// Anything that can price a (player, profile) pair. Utilities are normalized
// to [0,1] for every game type in this library.
template <class G>
concept GameLike = requires(const G& g, int p, const ActionProfile& a) {
  { g.players() } -> std::convertible_to<int>;
  { g.actions(p) } -> std::convertible_to<int32_t>;
  { g.utility(p, a) } -> std::convertible_to<double>;
};

// Dense utility tensor, player-major with profiles in lexicographic order.
class ExplicitGame {
 public:
  ExplicitGame() = default;
  // utilities[p * profile_count + rank(a)] = u_p(a); every value must lie in
  // [0,1] (no silent rescaling -- see normalize_utilities below).
  ExplicitGame(std::vector<int32_t> action_counts,
               std::vector<double> utilities);

  int players() const { return space_.players(); }
  int32_t actions(int p) const { return space_.actions(p); }
  const ProfileSpace& space() const { return space_; }

  double utility(int p, const ActionProfile& a) const {
    space_.validate(a);
    return utilities_[static_cast<std::size_t>(p) * space_.size() +
                      space_.rank(a)];
  }
  // Unchecked fast path for enumeration kernels.
  double utility_at(int p, std::size_t rank) const {
    return utilities_[static_cast<std::size_t>(p) * space_.size() + rank];
  }
  const std::vector<double>& utilities() const { return utilities_; }

 private:
  ProfileSpace space_;
  std::vector<double> utilities_;
};

// A game given only through a utility evaluator. The evaluator must be pure:
// repeated calls with the same arguments return the same value in [0,1].
class SuccinctGameOracle {
 public:
  using Evaluator = std::function<double(int p, const ActionProfile& a)>;

  SuccinctGameOracle() = default;
  SuccinctGameOracle(std::vector<int32_t> action_counts, Evaluator eval)
      : space_(std::move(action_counts)), eval_(std::move(eval)) {}
  explicit SuccinctGameOracle(const ExplicitGame& g)
      : space_(g.space()),
        eval_([g](int p, const ActionProfile& a) { return g.utility(p, a); }) {}

  int players() const { return space_.players(); }
  int32_t actions(int p) const { return space_.actions(p); }
  const ProfileSpace& space() const { return space_; }

  double utility(int p, const ActionProfile& a) const { return eval_(p, a); }

 private:
  ProfileSpace space_;
  Evaluator eval_;
};

// Sparse distribution over action profiles. Entries carry strictly positive
// mass; verifiers accept a total mass within 1e-12 of 1 and renormalize.
class CorrelatedDistribution {
 public:
  static constexpr double kMassTolerance = 1e-12;

  CorrelatedDistribution() = default;

  void add(ActionProfile a, double mass);
  static CorrelatedDistribution point_mass(ActionProfile a);
  static CorrelatedDistribution uniform(const std::vector<ActionProfile>& as);

  const std::map<ActionProfile, double>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  double total_mass() const;
  double mass(const ActionProfile& a) const;

  bool normalized(double tol = kMassTolerance) const;
  // Throws NormalizationError / DimensionError when the distribution is not
  // usable against the given space.
  void validate_for(const ProfileSpace& space,
                    double tol = kMassTolerance) const;

 private:
  std::map<ActionProfile, double> entries_;
};

// w(a) = sum_p u_p(a); in [0, n] for normalized utilities.
template <GameLike G>
double welfare(const G& game, const ActionProfile& a) {
  if (static_cast<int>(a.size()) != game.players())
    throw DimensionError("welfare: profile length does not match game");
  double w = 0.0;
  for (int p = 0; p < game.players(); ++p) w += game.utility(p, a);
  return w;
}

// Expected welfare sum_a x(a) w(a). Requires |total mass - 1| <= 1e-12 and
// divides by the total, so near-normalized inputs are accepted exactly once.
template <GameLike G>
double expected_welfare(const G& game, const CorrelatedDistribution& x) {
  if (!x.normalized())
    throw NormalizationError("expected_welfare: distribution mass not 1");
  double acc = 0.0;
  for (const auto& [a, mass] : x.entries()) acc += mass * welfare(game, a);
  return acc / x.total_mass();
}

template <GameLike G>
double expected_player_utility(const G& game, const CorrelatedDistribution& x,
                               int p) {
  if (!x.normalized())
    throw NormalizationError("expected_player_utility: mass not 1");
  double acc = 0.0;
  for (const auto& [a, mass] : x.entries()) acc += mass * game.utility(p, a);
  return acc / x.total_mass();
}

inline constexpr std::size_t kDefaultMaterializeCap = 1000000;

// Materializes a full utility tensor from an oracle. Spot-rechecks a few
// entries to catch impure evaluators.
ExplicitGame explicit_from_succinct(
    const SuccinctGameOracle& oracle,
    std::size_t profile_cap = env_cap("CEOPT_MATERIALIZE_CAP",
                                      kDefaultMaterializeCap));

// Affine map applied to raw utilities: normalized = (raw - offset) / scale.
struct NormalizationTransform {
  double offset = 0.0;
  double scale = 1.0;
  double apply(double raw) const {
    return scale == 0.0 ? 0.0 : (raw - offset) / scale;
  }
  double invert(double normalized) const { return normalized * scale + offset; }
};

// Maps an arbitrary real-valued tensor affinely into [0,1] and records the
// transform. Constant tensors map to all zeros.
std::pair<ExplicitGame, NormalizationTransform> normalize_utilities(
    std::vector<int32_t> action_counts, const std::vector<double>& raw);

}  // namespace ceopt

#endif  // CEOPT_GAME_HPP_
