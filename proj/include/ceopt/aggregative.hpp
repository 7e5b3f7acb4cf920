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

#ifndef CEOPT_AGGREGATIVE_HPP_
#define CEOPT_AGGREGATIVE_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ceopt/game.hpp"

namespace ceopt {

// The aggregate dimension k is a small constant; 4 is plenty for every use
// in this library and keeps grid coordinates in fixed-size arrays.
inline constexpr int kMaxAggDim = 4;

// Integer grid coordinates (multiples of a step delta); unused dimensions
// stay zero so lexicographic array comparison is well defined.
using GridCoord = std::array<int64_t, kMaxAggDim>;

// v_p(a_p, s) = clamp01(offset[p][a_p] + <coeff[p], s>).
// l-inf Lipschitz constant in s: max_p ||coeff[p]||_1.
struct LinearPayoff {
  std::vector<std::vector<double>> offsets;  // [player][action]
  std::vector<std::vector<double>> coeffs;   // [player][dim]
};

// v_p(a_p, s) = clamp01(benefit[p][a_p] - rate[p] * <weight[p][a_p], s> / scale).
// Utility rises with the action's standalone benefit and falls with the load
// the action itself places on congested components. Weights are stored in the
// family (usually a copy of the contribution vectors) so the payoff function
// stays fixed when the game's contributions are discretized.
struct CongestionPayoff {
  std::vector<std::vector<double>> benefits;             // [player][action]
  std::vector<std::vector<std::vector<double>>> weights; // [player][action][dim]
  std::vector<double> rates;                             // [player]
  double scale = 1.0;
};

// Values tabulated on the lattice {step * c : lo <= c <= hi} (componentwise);
// evaluation snaps s to the nearest lattice point, clamped into the table.
struct TabulatedPayoff {
  double step = 1.0;
  std::vector<int64_t> lo, hi;                           // per dimension
  std::vector<std::vector<std::vector<double>>> values;  // [player][action][cell]
};

using PayoffFamily = std::variant<LinearPayoff, CongestionPayoff, TabulatedPayoff>;

// An n-player game whose utilities depend on the player's own action and a
// low-dimensional additive aggregate S(a) = sum_p f_p(a_p).
//
// Construction validates: every |f_p(a_p)| component <= contribution_bound,
// the interval hull of S stays inside [-aggregate_bound, aggregate_bound]^k,
// and the payoff family's declared l-inf Lipschitz constant is <= 1 (the
// bounded-influence contract). Tabulated families are additionally
// spot-checked on sampled lattice pairs.
class AggregativeGame {
 public:
  AggregativeGame() = default;
  AggregativeGame(std::vector<int32_t> action_counts, int dimension,
                  double aggregate_bound, double contribution_bound,
                  std::vector<std::vector<std::vector<double>>> contributions,
                  PayoffFamily family);

  int players() const { return space_.players(); }
  int32_t actions(int p) const { return space_.actions(p); }
  const ProfileSpace& space() const { return space_; }

  int dimension() const { return k_; }
  double aggregate_bound() const { return W_; }
  double contribution_bound() const { return Wprime_; }

  const std::vector<double>& contribution(int p, int32_t a) const {
    return f_[p][a];
  }
  const PayoffFamily& family() const { return family_; }

  // S(a), componentwise; throws InvariantViolation if the result escapes the
  // declared range (a malformed game definition, impossible after validation).
  std::vector<double> aggregator_value(const ActionProfile& a) const;

  double payoff(int p, int32_t action, const std::vector<double>& s) const;
  double utility(int p, const ActionProfile& a) const;

  // Declared l-inf Lipschitz constant of the payoff family.
  double lipschitz_constant() const;

  SuccinctGameOracle to_succinct() const;

  // --- discretized-grid annotation -------------------------------------
  // A discretized game stores its contributions as exact integer multiples
  // of grid_delta(); kernels then aggregate in integer arithmetic so that
  // every code path evaluates payoffs at bit-identical aggregate vectors.
  bool on_grid() const { return grid_.has_value(); }
  double grid_delta() const { return grid_->delta; }
  double max_rounding_shift() const { return grid_->max_shift; }
  const GridCoord& contribution_coords(int p, int32_t a) const {
    return grid_->coords[p][a];
  }
  GridCoord total_coords(const ActionProfile& a) const;
  // Payoff at the grid point delta * c.
  double payoff_at(int p, int32_t action, const GridCoord& c) const;

  friend AggregativeGame discretize_aggregative(const AggregativeGame& game,
                                                double delta);

 private:
  struct GridInfo {
    double delta = 0.0;
    std::vector<std::vector<GridCoord>> coords;  // [player][action]
    double max_shift = 0.0;  // max |f - delta*coord| over all components
  };

  void validate() const;

  ProfileSpace space_;
  int k_ = 1;
  double W_ = 0.0;
  double Wprime_ = 0.0;
  std::vector<std::vector<std::vector<double>>> f_;  // [player][action][dim]
  PayoffFamily family_;
  std::optional<GridInfo> grid_;
};

// Rounds every contribution component to the nearest multiple of delta (ties
// away from zero) and annotates the result with integer grid coordinates.
// Aggregate values of any profile move by less than players()*delta in l-inf.
AggregativeGame discretize_aggregative(const AggregativeGame& game,
                                       double delta);

// Nearest multiple of delta, ties rounded away from zero.
int64_t round_to_grid(double value, double delta);

}  // namespace ceopt

#endif  // CEOPT_AGGREGATIVE_HPP_
