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

#ifndef CEOPT_BENCH_HPP_
#define CEOPT_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace ceopt {

// Sweep description: every (n, m, seed, eps) combination becomes one row.
struct BenchSpec {
  std::string family;  // random-explicit | gadget | aggregative-congestion
  std::vector<int> n_values;
  std::vector<int32_t> m_values;
  std::vector<std::uint64_t> seeds;
  std::vector<double> eps_values;
  int workers = 0;  // 0 = library default
};

// Runs the sweep and returns CSV text. Per row: best/worst CCE welfare and
// their ratio beta, the solver's target, achieved welfare, verified max
// regret, iteration counts, and wall time. Failures are recorded in the
// status column and do not stop the sweep.
std::string run_bench_csv(const BenchSpec& spec);

}  // namespace ceopt

#endif  // CEOPT_BENCH_HPP_
