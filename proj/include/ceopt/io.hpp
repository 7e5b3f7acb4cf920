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

#ifndef CEOPT_IO_HPP_
#define CEOPT_IO_HPP_

#include <string>
#include <variant>

#include <json.hpp>

#include "ceopt/aggregative.hpp"
#include "ceopt/gadget.hpp"
#include "ceopt/game.hpp"
#include "ceopt/lp.hpp"
#include "ceopt/regret.hpp"

namespace ceopt {

using Json = nlohmann::json;
using AnyGame = std::variant<ExplicitGame, AggregativeGame, GadgetGame>;

// Games. Explicit files store utilities player-major with profiles in
// lexicographic order; all reals round-trip exactly (shortest-representation
// decimal serialization).
Json game_to_json(const ExplicitGame& g);
Json game_to_json(const AggregativeGame& g);
Json game_to_json(const GadgetGame& g);
Json game_to_json(const AnyGame& g);
AnyGame game_from_json(const Json& j);

Json distribution_to_json(const CorrelatedDistribution& x);
CorrelatedDistribution distribution_from_json(const Json& j);

Json scaling_to_json(const ScalingVector& y);
ScalingVector scaling_from_json(const Json& j);

Json lp_solution_to_json(const LpSolution& s);

std::string regret_mode_name(RegretMode mode);
RegretMode regret_mode_from_name(const std::string& name);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

// Number of players / action counts of any game variant.
std::vector<int32_t> action_counts_of(const AnyGame& g);

// Materializes any game variant into a dense tensor (for the LP oracle).
ExplicitGame materialize(const AnyGame& g,
                         std::size_t profile_cap = env_cap(
                             "CEOPT_MATERIALIZE_CAP", kDefaultMaterializeCap));

}  // namespace ceopt

#endif  // CEOPT_IO_HPP_
