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

// Times the OpenMP kernels against their serial reference twins. Inputs are
// sized so each kernel runs long enough to measure; results are also
// cross-checked so the benchmark doubles as a consistency test.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ceopt/gadget.hpp"
#include "ceopt/generate.hpp"
#include "ceopt/mwmp.hpp"
#include "ceopt/regret.hpp"

using namespace ceopt;

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool match) {
  std::printf("%-28s %12.2f %12.2f %9.2fx   %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms, match ? "ok" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-28s %12s %12s %10s\n", "kernel", "serial_ms", "parallel_ms",
              "speedup");
  bool all_ok = true;

  {
    const ExplicitGame g = random_explicit_game(3, {60, 60, 60}, 1);
    const auto space = make_regret_space(RegretMode::kCeWelfare, g);
    const auto y = random_scaling_vector(space, 2, 3.0);
    MwmpResult a, b;
    const double ser =
        time_ms([&] { a = reference::brute_force_mwmp(g, y); });
    const double par = time_ms([&] { b = brute_force_mwmp(g, y); });
    const bool ok = a.value == b.value && a.profile == b.profile;
    all_ok = all_ok && ok;
    row("brute_force_mwmp", ser, par, ok);
  }

  {
    const ExplicitGame g = random_explicit_game(3, {40, 40, 40}, 3);
    const auto x = random_distribution(g.space(), 4, 4000);
    CeRegretReport a, b;
    const double ser =
        time_ms([&] { a = reference::max_ce_regret_report(g, x); });
    const double par = time_ms([&] { b = max_ce_regret_report(g, x); });
    const bool ok = a.max_regret == b.max_regret && a.player == b.player &&
                    a.from == b.from && a.to == b.to;
    all_ok = all_ok && ok;
    row("max_ce_regret", ser, par, ok);
  }

  {
    const ExplicitGame base = random_explicit_game(3, {44, 44, 44}, 5);
    const GadgetGame g = build_gadget(base, max_profile_welfare(base));
    GadgetStructureReport a, b;
    const double ser =
        time_ms([&] { a = reference::verify_gadget_structure(g); });
    const double par = time_ms([&] { b = verify_gadget_structure(g); });
    const bool ok = a.passed() == b.passed() && a.witness == b.witness;
    all_ok = all_ok && ok;
    row("verify_gadget_structure", ser, par, ok);
  }

  {
    const AggregativeGame g = random_congestion_game(12, 6, 7);
    const auto space = make_regret_space(RegretMode::kCeWelfare, g);
    const auto y = random_scaling_vector(space, 8, 4.0);
    MwmpResult a, b;
    const double ser =
        time_ms([&] { a = reference::aggregative_dp_mwmp(g, y, 1.0); });
    const double par = time_ms([&] { b = aggregative_dp_mwmp(g, y, 1.0); });
    const bool ok = a.value == b.value && a.profile == b.profile;
    all_ok = all_ok && ok;
    row("aggregative_dp_mwmp", ser, par, ok);
  }

  return all_ok ? 0 : 1;
}
