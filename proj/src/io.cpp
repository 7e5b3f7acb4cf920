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

#include "ceopt/io.hpp"

#include <fstream>
#include <sstream>

namespace ceopt {

namespace {

std::vector<int32_t> counts_from_json(const Json& j) {
  std::vector<int32_t> m = j.at("m").get<std::vector<int32_t>>();
  if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(m.size()))
    throw ValidationError("game json: n does not match m");
  return m;
}

}  // namespace

Json game_to_json(const ExplicitGame& g) {
  Json j;
  j["type"] = "explicit";
  j["n"] = g.players();
  j["m"] = g.space().action_counts();
  std::vector<std::vector<double>> u(g.players());
  const std::size_t P = g.space().size();
  for (int p = 0; p < g.players(); ++p) {
    u[p].resize(P);
    for (std::size_t r = 0; r < P; ++r) u[p][r] = g.utility_at(p, r);
  }
  j["u"] = u;
  return j;
}

Json game_to_json(const AggregativeGame& g) {
  Json j;
  j["type"] = "aggregative";
  j["n"] = g.players();
  j["m"] = g.space().action_counts();
  j["k"] = g.dimension();
  j["W"] = g.aggregate_bound();
  j["Wprime"] = g.contribution_bound();
  std::vector<std::vector<std::vector<double>>> f(g.players());
  for (int p = 0; p < g.players(); ++p) {
    f[p].resize(g.actions(p));
    for (int32_t a = 0; a < g.actions(p); ++a) f[p][a] = g.contribution(p, a);
  }
  j["f"] = f;
  Json payoff;
  if (const auto* lin = std::get_if<LinearPayoff>(&g.family())) {
    payoff["family"] = "linear";
    payoff["params"] = {{"offsets", lin->offsets}, {"coeffs", lin->coeffs}};
  } else if (const auto* con = std::get_if<CongestionPayoff>(&g.family())) {
    payoff["family"] = "congestion";
    payoff["params"] = {{"benefits", con->benefits},
                        {"weights", con->weights},
                        {"rates", con->rates},
                        {"scale", con->scale}};
  } else {
    const auto& tab = std::get<TabulatedPayoff>(g.family());
    payoff["family"] = "tabulated";
    payoff["params"] = {{"step", tab.step},
                        {"lo", tab.lo},
                        {"hi", tab.hi},
                        {"values", tab.values}};
  }
  j["payoff"] = payoff;
  return j;
}

Json game_to_json(const GadgetGame& g) {
  if (!g.base_explicit())
    throw ArgumentError("gadget json: only gadgets over explicit bases serialize");
  Json j;
  j["type"] = "gadget";
  j["opt"] = g.opt();
  j["eps"] = g.epsilon();
  j["base"] = game_to_json(*g.base_explicit());
  return j;
}

Json game_to_json(const AnyGame& g) {
  return std::visit([](const auto& x) { return game_to_json(x); }, g);
}

AnyGame game_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "explicit") {
    const auto m = counts_from_json(j);
    const auto u = j.at("u").get<std::vector<std::vector<double>>>();
    ProfileSpace space(m);
    if (u.size() != m.size())
      throw ValidationError("explicit json: u has wrong player count");
    std::vector<double> flat;
    flat.reserve(space.size() * m.size());
    for (const auto& row : u) {
      if (row.size() != space.size())
        throw ValidationError("explicit json: utility row has wrong length");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return ExplicitGame(m, std::move(flat));
  }
  if (type == "aggregative") {
    const auto m = counts_from_json(j);
    const int k = j.at("k").get<int>();
    const double W = j.at("W").get<double>();
    const double Wp = j.at("Wprime").get<double>();
    auto f = j.at("f").get<std::vector<std::vector<std::vector<double>>>>();
    const Json& payoff = j.at("payoff");
    const std::string family = payoff.at("family").get<std::string>();
    const Json& params = payoff.at("params");
    PayoffFamily fam;
    if (family == "linear") {
      fam = LinearPayoff{
          params.at("offsets").get<std::vector<std::vector<double>>>(),
          params.at("coeffs").get<std::vector<std::vector<double>>>()};
    } else if (family == "congestion") {
      fam = CongestionPayoff{
          params.at("benefits").get<std::vector<std::vector<double>>>(),
          params.at("weights")
              .get<std::vector<std::vector<std::vector<double>>>>(),
          params.at("rates").get<std::vector<double>>(),
          params.at("scale").get<double>()};
    } else if (family == "tabulated") {
      fam = TabulatedPayoff{
          params.at("step").get<double>(),
          params.at("lo").get<std::vector<int64_t>>(),
          params.at("hi").get<std::vector<int64_t>>(),
          params.at("values")
              .get<std::vector<std::vector<std::vector<double>>>>()};
    } else {
      throw ValidationError("aggregative json: unknown payoff family " + family);
    }
    return AggregativeGame(m, k, W, Wp, std::move(f), std::move(fam));
  }
  if (type == "gadget") {
    AnyGame base = game_from_json(j.at("base"));
    const auto* eg = std::get_if<ExplicitGame>(&base);
    if (!eg) throw ValidationError("gadget json: base must be explicit");
    return build_gadget(*eg, j.at("opt").get<double>(),
                        j.at("eps").get<double>());
  }
  throw ValidationError("game json: unknown type " + type);
}

Json distribution_to_json(const CorrelatedDistribution& x) {
  Json entries = Json::array();
  for (const auto& [a, mass] : x.entries())
    entries.push_back({{"profile", a.actions}, {"p", mass}});
  return Json{{"entries", entries}};
}

CorrelatedDistribution distribution_from_json(const Json& j) {
  CorrelatedDistribution x;
  for (const auto& e : j.at("entries"))
    x.add(ActionProfile(e.at("profile").get<std::vector<int32_t>>()),
          e.at("p").get<double>());
  return x;
}

std::string regret_mode_name(RegretMode mode) {
  switch (mode) {
    case RegretMode::kCeWelfare: return "ce-welfare";
    case RegretMode::kCeEgalitarian: return "ce-egalitarian";
    case RegretMode::kCePareto: return "ce-pareto";
    case RegretMode::kCceWelfare: return "cce-welfare";
  }
  throw InternalError("unknown regret mode");
}

RegretMode regret_mode_from_name(const std::string& name) {
  if (name == "ce-welfare" || name == "ce") return RegretMode::kCeWelfare;
  if (name == "ce-egalitarian" || name == "egal")
    return RegretMode::kCeEgalitarian;
  if (name == "ce-pareto" || name == "pareto") return RegretMode::kCePareto;
  if (name == "cce-welfare" || name == "cce") return RegretMode::kCceWelfare;
  throw ArgumentError("unknown regret mode: " + name);
}

Json scaling_to_json(const ScalingVector& y) {
  Json j;
  j["mode"] = regret_mode_name(y.space.mode());
  j["m"] = y.space.action_counts();
  if (y.space.mode() == RegretMode::kCePareto)
    j["pareto_player"] = y.space.pareto_player();
  std::vector<double> dev(y.v.begin(), y.v.begin() + y.space.deviation_dim());
  std::vector<double> obj(y.v.begin() + y.space.deviation_dim(), y.v.end());
  j["deviation"] = dev;
  j["objective"] = obj;
  return j;
}

ScalingVector scaling_from_json(const Json& j) {
  const RegretMode mode = regret_mode_from_name(j.at("mode").get<std::string>());
  auto m = j.at("m").get<std::vector<int32_t>>();
  const int q = j.contains("pareto_player") ? j.at("pareto_player").get<int>() : -1;
  RegretIndexSpace space(mode, std::move(m), q);
  auto dev = j.at("deviation").get<std::vector<double>>();
  auto obj = j.at("objective").get<std::vector<double>>();
  if (static_cast<int>(dev.size()) != space.deviation_dim() ||
      static_cast<int>(obj.size()) != space.objective_dim())
    throw DimensionError("scaling json: component counts do not match mode");
  dev.insert(dev.end(), obj.begin(), obj.end());
  return ScalingVector(std::move(space), std::move(dev));
}

Json lp_solution_to_json(const LpSolution& s) {
  Json j;
  j["distribution"] = distribution_to_json(s.distribution);
  j["objective_value"] = s.objective_value;
  j["exact"] = s.exact;
  if (s.exact) {
    std::ostringstream os;
    os << s.objective_exact;
    j["objective_exact"] = os.str();
  }
  j["concept"] = s.eq_concept == EqConcept::kCe ? "ce" : "cce";
  switch (s.objective) {
    case LpObjective::kWelfare: j["objective"] = "welfare"; break;
    case LpObjective::kEgalitarian: j["objective"] = "egalitarian"; break;
    case LpObjective::kPlayerUtility:
      j["objective"] = "player:" + std::to_string(s.player);
      break;
  }
  j["direction"] = s.direction == LpDirection::kMax ? "max" : "min";
  j["support_size"] = s.distribution.support_size();
  j["equilibrium_constraints"] = s.equilibrium_constraints;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::vector<int32_t> action_counts_of(const AnyGame& g) {
  return std::visit(
      [](const auto& x) { return x.space().action_counts(); }, g);
}

ExplicitGame materialize(const AnyGame& g, std::size_t profile_cap) {
  return std::visit(
      [&](const auto& x) -> ExplicitGame {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ExplicitGame>) {
          return x;
        } else {
          return explicit_from_succinct(x.to_succinct(), profile_cap);
        }
      },
      g);
}

}  // namespace ceopt
