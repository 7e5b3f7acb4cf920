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

#include "ceopt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ceopt/generate.hpp"
#include "ceopt/lp.hpp"
#include "ceopt/solver.hpp"

namespace ceopt {

namespace {

struct Job {
  int n;
  int32_t m;
  std::uint64_t seed;
  double eps;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

std::string run_job(const std::string& family, const Job& job) {
  std::ostringstream row;
  row << family << "," << job.n << "," << job.m << "," << job.seed << ","
      << fmt(job.eps) << ",";
  try {
    const auto t0 = std::chrono::steady_clock::now();

    ExplicitGame lp_game;  // materialized view used by both LP ends
    std::unique_ptr<MwmpOracle> oracle;
    RegretIndexSpace space;

    if (family == "random-explicit") {
      lp_game = random_explicit_game(job.n, std::vector<int32_t>(job.n, job.m),
                                     job.seed);
    } else if (family == "gadget") {
      GadgetGame g = random_gadget_instance(
          job.n, std::vector<int32_t>(job.n, job.m), job.seed);
      lp_game = explicit_from_succinct(g.to_succinct());
    } else if (family == "aggregative-congestion") {
      AggregativeGame g = random_congestion_game(job.n, job.m, job.seed);
      lp_game = explicit_from_succinct(g.to_succinct());
      space = make_regret_space(RegretMode::kCeWelfare, g);
      oracle = std::make_unique<AggregativeDpMwmpOracle>(g, space, 1.0);
    } else {
      throw ArgumentError("bench: unknown family " + family);
    }
    if (!oracle) {
      space = make_regret_space(RegretMode::kCeWelfare, lp_game);
      oracle = std::make_unique<BruteForceMwmpOracle>(lp_game, space);
    }

    const LpSolution best =
        optimal_equilibrium(lp_game, EqConcept::kCce, LpObjective::kWelfare);
    const LpSolution worst =
        worst_equilibrium(lp_game, EqConcept::kCce, LpObjective::kWelfare);
    const LpSolution ce_best =
        optimal_equilibrium(lp_game, EqConcept::kCe, LpObjective::kWelfare);

    SolverConfig cfg;
    cfg.epsilon = job.eps;
    cfg.mode = RegretMode::kCeWelfare;
    cfg.target = ce_best.objective_value;
    const SolverResult res = solve(lp_game, *oracle, cfg);

    const auto t1 = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();

    row << fmt(best.objective_value) << "," << fmt(worst.objective_value)
        << ",";
    if (best.objective_value > 0.0)
      row << fmt(worst.objective_value / best.objective_value);
    row << "," << fmt(cfg.target) << ","
        << fmt(res.trace.verified_objective) << ","
        << fmt(res.trace.verified_regret) << "," << res.trace.budget << ","
        << res.trace.iterations << "," << fmt(ms) << ",ok";
  } catch (const std::exception& e) {
    row << ",,,,,,,,,error: " << sanitize(e.what());
  }
  return row.str();
}

}  // namespace

std::string run_bench_csv(const BenchSpec& spec) {
  std::vector<Job> jobs;
  for (int n : spec.n_values)
    for (int32_t m : spec.m_values)
      for (std::uint64_t seed : spec.seeds)
        for (double eps : spec.eps_values) jobs.push_back({n, m, seed, eps});

  std::vector<std::string> rows(jobs.size());
  const auto total = static_cast<std::int64_t>(jobs.size());
#ifdef _OPENMP
  const int workers = spec.workers > 0
                          ? std::min<int>(spec.workers, omp_get_max_threads())
                          : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers) if (total > 1)
#endif
  for (std::int64_t i = 0; i < total; ++i)
    rows[static_cast<std::size_t>(i)] = run_job(spec.family, jobs[i]);

  std::ostringstream csv;
  csv << "family,n,m,seed,eps,lp_best_cce,lp_worst_cce,beta,target,"
         "solver_welfare,max_regret,iteration_budget,iterations_run,wall_ms,"
         "status\n";
  for (const auto& r : rows) csv << r << "\n";
  return csv.str();
}

}  // namespace ceopt
