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

#ifndef CEOPT_GENERATE_HPP_
#define CEOPT_GENERATE_HPP_

#include <cstdint>
#include <random>

#include "ceopt/aggregative.hpp"
#include "ceopt/gadget.hpp"
#include "ceopt/game.hpp"
#include "ceopt/regret.hpp"

namespace ceopt {

// Utilities drawn uniformly from {0, 1/grid, ..., 1}. Keeping payoffs on a
// small dyadic grid lets the exact LP arithmetic kick in.
ExplicitGame random_explicit_game(int n, const std::vector<int32_t>& m,
                                  std::uint64_t seed, int grid = 256);

// Largest profile welfare, by enumeration.
double max_profile_welfare(const ExplicitGame& g);

// Gadget over a random base, with opt set to the base's maximum profile
// welfare and the default (tightest) eps.
GadgetGame random_gadget_instance(int n, const std::vector<int32_t>& m,
                                  std::uint64_t seed);

// One-dimensional congestion family: action j contributes load j, utility is
// an action benefit minus a load-proportional congestion cost. Contributions
// are integers, so delta = 1 discretizes this game exactly.
AggregativeGame random_congestion_game(int n, int32_t m, std::uint64_t seed);

// Linear-payoff aggregative instance with real-valued (off-grid)
// contributions; exercises the discretization path.
AggregativeGame random_aggregative_game(int n, const std::vector<int32_t>& m,
                                        int k, std::uint64_t seed);

// Componentwise uniform in [0, hi] on a dyadic grid.
ScalingVector random_scaling_vector(const RegretIndexSpace& space,
                                    std::uint64_t seed, double hi);

CorrelatedDistribution random_distribution(const ProfileSpace& space,
                                           std::uint64_t seed,
                                           int support_size);

}  // namespace ceopt

#endif  // CEOPT_GENERATE_HPP_
