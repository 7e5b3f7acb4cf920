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

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ceopt/bench.hpp"
#include "ceopt/generate.hpp"
#include "ceopt/io.hpp"
#include "ceopt/lp.hpp"
#include "ceopt/solver.hpp"

namespace {

using namespace ceopt;

struct ModeSpec {
  RegretMode mode = RegretMode::kCeWelfare;
  int pareto_player = -1;
};

ModeSpec parse_mode(const std::string& s) {
  if (s.rfind("pareto:", 0) == 0)
    return {RegretMode::kCePareto, std::stoi(s.substr(7))};
  return {regret_mode_from_name(s), -1};
}

LpObjective parse_objective(const std::string& s, int* player) {
  if (s == "welfare") return LpObjective::kWelfare;
  if (s == "egalitarian" || s == "egal") return LpObjective::kEgalitarian;
  if (s.rfind("player:", 0) == 0) {
    *player = std::stoi(s.substr(7));
    return LpObjective::kPlayerUtility;
  }
  throw ArgumentError("unknown objective: " + s);
}

int cmd_generate(const std::string& family, int n, int32_t m,
                 std::uint64_t seed, const std::string& out) {
  Json j;
  if (family == "random-explicit") {
    j = game_to_json(random_explicit_game(n, std::vector<int32_t>(n, m), seed));
  } else if (family == "gadget") {
    GadgetGame g = random_gadget_instance(n, std::vector<int32_t>(n, m), seed);
    require_gadget_structure(g);
    j = game_to_json(g);
  } else if (family == "aggregative-congestion") {
    j = game_to_json(random_congestion_game(n, m, seed));
  } else {
    throw ArgumentError("unknown family: " + family);
  }
  write_json_file(out, j);
  return 0;
}

int cmd_lp_solve(const std::string& game_path, const std::string& concept_s,
                 const std::string& objective_s, const std::string& direction_s,
                 const std::string& arith_s, const std::string& out) {
  const ExplicitGame game = materialize(game_from_json(read_json_file(game_path)));
  const EqConcept kind = concept_s == "ce" ? EqConcept::kCe : EqConcept::kCce;
  int player = -1;
  const LpObjective objective = parse_objective(objective_s, &player);
  const LpDirection direction =
      direction_s == "min" ? LpDirection::kMin : LpDirection::kMax;
  LpArithmetic arith = LpArithmetic::kAuto;
  if (arith_s == "rational") arith = LpArithmetic::kRational;
  if (arith_s == "float") arith = LpArithmetic::kFloat;

  const LpSolution sol =
      solve_equilibrium_lp(game, kind, objective, direction, player, arith);
  const Json j = lp_solution_to_json(sol);
  if (!out.empty()) write_json_file(out, j);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& game_path, const std::string& dist_path,
               const std::string& concept_s, double eps) {
  const AnyGame game = game_from_json(read_json_file(game_path));
  const CorrelatedDistribution x =
      distribution_from_json(read_json_file(dist_path));
  Json j;
  bool ok = false;
  if (concept_s == "cce") {
    const CceRegretReport rep = std::visit(
        [&](const auto& g) { return max_cce_regret_report(g, x); }, game);
    ok = rep.is_eps_cce(eps);
    j = {{"max_cce_regret", rep.max_regret},
         {"argmax", {rep.player, rep.to}},
         {"is_eps_cce", ok}};
  } else {
    const CeRegretReport rep = std::visit(
        [&](const auto& g) { return max_ce_regret_report(g, x); }, game);
    ok = rep.is_eps_ce(eps);
    j = {{"max_ce_regret", rep.max_regret},
         {"argmax", {rep.player, rep.from, rep.to}},
         {"is_eps_ce", ok}};
  }
  std::cout << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_mwmp(const std::string& game_path, const std::string& y_path,
             double delta, const std::string& out) {
  const AnyGame game = game_from_json(read_json_file(game_path));
  const ScalingVector y = scaling_from_json(read_json_file(y_path));
  MwmpResult res;
  if (delta > 0.0) {
    const auto* agg = std::get_if<AggregativeGame>(&game);
    if (!agg)
      throw ArgumentError("mwmp: --delta applies to aggregative games only");
    res = aggregative_dp_mwmp(*agg, y, delta);
  } else {
    res = std::visit(
        [&](const auto& g) { return brute_force_mwmp(g, y); }, game);
  }
  const Json j = {{"profile", res.profile.actions}, {"value", res.value}};
  if (!out.empty()) write_json_file(out, j);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_gadget_build(const std::string& base_path, const std::string& opt_s,
                     double eps, const std::string& out, bool materialized) {
  const AnyGame base_any = game_from_json(read_json_file(base_path));
  const auto* base = std::get_if<ExplicitGame>(&base_any);
  if (!base) throw ArgumentError("gadget build: base must be an explicit game");
  double opt;
  if (opt_s == "auto") {
    opt = max_profile_welfare(*base);
  } else {
    opt = std::stod(opt_s);
  }
  const GadgetGame g = eps > 0.0 ? build_gadget(*base, opt, eps)
                                 : build_gadget(*base, opt);
  write_json_file(out, materialized
                           ? game_to_json(explicit_from_succinct(g.to_succinct()))
                           : game_to_json(g));
  return 0;
}

int cmd_gadget_verify(const std::string& path) {
  const AnyGame any = game_from_json(read_json_file(path));
  const auto* g = std::get_if<GadgetGame>(&any);
  if (!g) throw ArgumentError("gadget verify: file does not hold a gadget game");
  const GadgetStructureReport rep = verify_gadget_structure(*g);
  Json j = {{"nash_at_b", rep.nash_at_b},
            {"potential_exact", rep.potential_exact},
            {"augmented_welfare_ok", rep.augmented_welfare_ok},
            {"passed", rep.passed()}};
  if (!rep.passed()) {
    j["failing_check"] = rep.failing_check;
    j["witness"] = rep.witness.actions;
    if (rep.witness_player >= 0) {
      j["witness_player"] = rep.witness_player;
      j["witness_action"] = rep.witness_action;
    }
  }
  std::cout << j.dump(2) << "\n";
  return rep.passed() ? 0 : 1;
}

std::string trace_csv(const SolverTrace& trace) {
  std::ostringstream os;
  os.precision(17);
  os << "t,distance,oracle_value,support_size\n";
  for (const auto& row : trace.rows)
    os << row.t << "," << row.distance << "," << row.oracle_value << ","
       << row.y_support << "\n";
  return os.str();
}

int cmd_solve(const std::string& game_path, double eps,
              const std::string& mode_s, const std::string& target_s,
              const std::string& oracle_s, double delta,
              const std::string& out, const std::string& trace_path) {
  const AnyGame game = game_from_json(read_json_file(game_path));
  const ModeSpec mode = parse_mode(mode_s);
  const std::vector<int32_t> counts = action_counts_of(game);
  const RegretIndexSpace space(mode.mode, counts, mode.pareto_player);

  std::unique_ptr<MwmpOracle> oracle;
  if (oracle_s == "aggdp") {
    const auto* agg = std::get_if<AggregativeGame>(&game);
    if (!agg)
      throw ArgumentError("solve: the aggdp oracle needs an aggregative game");
    const double d = delta > 0.0 ? delta : 1.0;
    oracle = std::make_unique<AggregativeDpMwmpOracle>(*agg, space, d);
  } else {
    oracle = std::make_unique<BruteForceMwmpOracle>(materialize(game), space);
  }

  SolverConfig cfg;
  cfg.epsilon = eps;
  cfg.mode = mode.mode;
  cfg.pareto_player = mode.pareto_player;
  cfg.record_trace = !trace_path.empty();
  if (cfg.record_trace) {
    // Keep traces of long runs to a manageable number of rows.
    const std::uint64_t budget = solver_iteration_budget(
        static_cast<int>(counts.size()),
        *std::max_element(counts.begin(), counts.end()), eps);
    cfg.trace_stride = std::max<std::uint64_t>(1, budget / 200000);
  }

  auto run = [&](double target) {
    cfg.target = target;
    return std::visit(
        [&](const auto& g) { return solve(g, *oracle, cfg); }, game);
  };

  double target = 0.0;
  SolverResult result;
  if (target_s == "lp") {
    const ExplicitGame lp_game = materialize(game);
    LpObjective obj = LpObjective::kWelfare;
    int q = -1;
    if (mode.mode == RegretMode::kCeEgalitarian) obj = LpObjective::kEgalitarian;
    if (mode.mode == RegretMode::kCePareto) {
      obj = LpObjective::kPlayerUtility;
      q = mode.pareto_player;
    }
    const EqConcept kind = mode.mode == RegretMode::kCceWelfare
                               ? EqConcept::kCce
                               : EqConcept::kCe;
    target = optimal_equilibrium(lp_game, kind, obj, q).objective_value;
    result = run(target);
  } else if (target_s == "search") {
    auto sr = std::visit(
        [&](const auto& g) {
          return binary_search_target(g, *oracle, eps, mode.mode,
                                      mode.pareto_player, cfg);
        },
        game);
    target = sr.target;
    result.distribution = std::move(sr.distribution);
    result.trace = std::move(sr.trace);
  } else {
    target = std::stod(target_s);
    result = run(target);
  }

  if (!out.empty())
    write_json_file(out, distribution_to_json(result.distribution));
  if (!trace_path.empty()) write_text_file(trace_path, trace_csv(result.trace));

  const Json summary = {{"target", target},
                        {"objective", result.trace.verified_objective},
                        {"max_regret", result.trace.verified_regret},
                        {"iterations", result.trace.iterations},
                        {"iteration_budget", result.trace.budget},
                        {"final_distance", result.trace.final_distance},
                        {"support_size", result.distribution.support_size()}};
  std::cout << summary.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlated equilibrium optimization toolkit"};
  app.require_subcommand(1);

  // generate
  std::string g_family = "random-explicit", g_out = "game.json";
  int g_n = 2;
  int32_t g_m = 2;
  std::uint64_t g_seed = 1;
  auto* gen = app.add_subcommand("generate", "generate a game instance");
  gen->add_option("--family", g_family,
                  "random-explicit | gadget | aggregative-congestion");
  gen->add_option("-n,--players", g_n, "number of players");
  gen->add_option("-m,--actions", g_m, "actions per player");
  gen->add_option("--seed", g_seed, "rng seed");
  gen->add_option("-o,--out", g_out, "output game file")->required();

  // solve
  std::string s_game, s_mode = "ce", s_target = "lp", s_oracle = "brute";
  std::string s_out, s_trace;
  double s_eps = 0.1, s_delta = 0.0;
  auto* slv = app.add_subcommand("solve", "compute an approximate equilibrium");
  slv->add_option("--game", s_game)->required();
  slv->add_option("--eps", s_eps, "approximation parameter in (0,1]");
  slv->add_option("--mode", s_mode, "ce | cce | egal | pareto:q");
  slv->add_option("--target", s_target, "number | lp | search");
  slv->add_option("--oracle", s_oracle, "brute | aggdp");
  slv->add_option("--delta", s_delta, "grid step for the aggdp oracle");
  slv->add_option("-o,--out", s_out, "distribution output file");
  slv->add_option("--trace", s_trace, "iteration trace CSV");

  // verify
  std::string v_game, v_dist, v_concept = "ce";
  double v_eps = 0.0;
  auto* ver = app.add_subcommand("verify", "verify a distribution file");
  ver->add_option("--game", v_game)->required();
  ver->add_option("--dist", v_dist)->required();
  ver->add_option("--concept", v_concept, "ce | cce");
  ver->add_option("--eps", v_eps, "approximation budget");

  // lp-solve
  std::string l_game, l_concept = "ce", l_objective = "welfare",
              l_direction = "max", l_arith = "auto", l_out;
  auto* lps = app.add_subcommand("lp-solve", "exact equilibrium LP");
  lps->add_option("--game", l_game)->required();
  lps->add_option("--concept", l_concept, "ce | cce");
  lps->add_option("--objective", l_objective,
                  "welfare | egalitarian | player:q");
  lps->add_option("--direction", l_direction, "max | min");
  lps->add_option("--arith", l_arith, "auto | rational | float");
  lps->add_option("-o,--out", l_out, "solution output file");

  // mwmp
  std::string m_game, m_y, m_out;
  double m_delta = 0.0;
  auto* mw = app.add_subcommand("mwmp", "maximize modified welfare");
  mw->add_option("--game", m_game)->required();
  mw->add_option("--y", m_y, "scaling vector file")->required();
  mw->add_option("--delta", m_delta, "grid step (aggregative games)");
  mw->add_option("-o,--out", m_out);

  // gadget build/verify
  auto* gad = app.add_subcommand("gadget", "hardness-gadget instances");
  gad->require_subcommand(1);
  std::string gb_base, gb_opt = "auto", gb_out = "gadget.json";
  double gb_eps = 0.0;
  bool gb_explicit = false;
  auto* gb = gad->add_subcommand("build", "augment a base game");
  gb->add_option("--base", gb_base)->required();
  gb->add_option("--opt", gb_opt, "welfare threshold, or 'auto'");
  gb->add_option("--eps", gb_eps, "worst-equilibrium welfare (default opt/n)");
  gb->add_option("-o,--out", gb_out)->required();
  gb->add_flag("--explicit", gb_explicit, "write the dense tensor instead");
  std::string gv_path;
  auto* gv = gad->add_subcommand("verify", "check gadget structure");
  gv->add_option("game", gv_path, "gadget game file")->required();

  // bench
  BenchSpec spec;
  std::string b_out = "bench.csv";
  auto* ben = app.add_subcommand("bench", "benchmark sweep");
  ben->add_option("--family", spec.family)->required();
  ben->add_option("--n", spec.n_values)->delimiter(',');
  ben->add_option("--m", spec.m_values)->delimiter(',');
  ben->add_option("--seeds", spec.seeds)->delimiter(',');
  ben->add_option("--eps", spec.eps_values)->delimiter(',');
  ben->add_option("--workers", spec.workers);
  ben->add_option("-o,--out", b_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(g_family, g_n, g_m, g_seed, g_out);
    if (slv->parsed())
      return cmd_solve(s_game, s_eps, s_mode, s_target, s_oracle, s_delta,
                       s_out, s_trace);
    if (ver->parsed()) return cmd_verify(v_game, v_dist, v_concept, v_eps);
    if (lps->parsed())
      return cmd_lp_solve(l_game, l_concept, l_objective, l_direction, l_arith,
                          l_out);
    if (mw->parsed()) return cmd_mwmp(m_game, m_y, m_delta, m_out);
    if (gad->parsed()) {
      if (gb->parsed())
        return cmd_gadget_build(gb_base, gb_opt, gb_eps, gb_out, gb_explicit);
      return cmd_gadget_verify(gv_path);
    }
    if (ben->parsed()) {
      write_text_file(b_out, run_bench_csv(spec));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
