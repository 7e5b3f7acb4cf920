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

#ifndef CEOPT_PARALLEL_HPP_
#define CEOPT_PARALLEL_HPP_

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ceopt {

// Splits [0, total) into one contiguous chunk per thread and runs
// fn(lo, hi) on each. Totals at or below grain stay on the calling thread.
// Chunks are contiguous so callers can walk profiles with an odometer
// instead of unranking every index.
template <class Fn>
void parallel_ranges(std::size_t total, Fn&& fn, std::size_t grain = 2048) {
  if (total == 0) return;
#ifdef _OPENMP
  if (total > grain && omp_get_max_threads() > 1 && !omp_in_parallel()) {
#pragma omp parallel
    {
      const std::size_t nt = static_cast<std::size_t>(omp_get_num_threads());
      const std::size_t tid = static_cast<std::size_t>(omp_get_thread_num());
      const std::size_t chunk = (total + nt - 1) / nt;
      const std::size_t lo = tid * chunk;
      const std::size_t hi = lo + chunk < total ? lo + chunk : total;
      if (lo < hi) fn(lo, hi);
    }
    return;
  }
#else
  (void)grain;
#endif
  fn(std::size_t{0}, total);
}

}  // namespace ceopt

#endif  // CEOPT_PARALLEL_HPP_
