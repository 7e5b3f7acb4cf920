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

#include "ceopt/generate.hpp"

#include <algorithm>
#include <set>

namespace ceopt {

namespace {

// Deterministic across platforms: raw engine words, no std distributions.
double dyadic(std::mt19937_64& rng, int grid) {
  return static_cast<double>(rng() % (static_cast<std::uint64_t>(grid) + 1)) /
         static_cast<double>(grid);
}

}  // namespace

ExplicitGame random_explicit_game(int n, const std::vector<int32_t>& m,
                                  std::uint64_t seed, int grid) {
  if (static_cast<int>(m.size()) != n)
    throw ArgumentError("random_explicit_game: m must list one count per player");
  ProfileSpace space(m);
  std::mt19937_64 rng(seed);
  std::vector<double> u(static_cast<std::size_t>(n) * space.size());
  for (double& v : u) v = dyadic(rng, grid);
  return ExplicitGame(m, std::move(u));
}

double max_profile_welfare(const ExplicitGame& g) {
  const ProfileSpace& space = g.space();
  double best = 0.0;
  for (std::size_t r = 0; r < space.size(); ++r) {
    double w = 0.0;
    for (int p = 0; p < g.players(); ++p) w += g.utility_at(p, r);
    best = std::max(best, w);
  }
  return best;
}

GadgetGame random_gadget_instance(int n, const std::vector<int32_t>& m,
                                  std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    ExplicitGame base = random_explicit_game(n, m, s);
    const double opt = max_profile_welfare(base);
    if (opt > 0.0) return build_gadget(base, opt);
    // all-zero tensor: no admissible opt, draw again
  }
}

AggregativeGame random_congestion_game(int n, int32_t m, std::uint64_t seed) {
  if (m < 2) throw ArgumentError("random_congestion_game: need m >= 2");
  std::mt19937_64 rng(seed);
  std::vector<int32_t> counts(n, m);
  std::vector<std::vector<std::vector<double>>> f(n);
  CongestionPayoff payoff;
  payoff.benefits.resize(n);
  payoff.rates.resize(n);
  payoff.scale = static_cast<double>(n) * (m - 1);
  payoff.weights.resize(n);
  for (int p = 0; p < n; ++p) {
    f[p].resize(m);
    payoff.benefits[p].resize(m);
    payoff.weights[p].resize(m);
    const double lift = 0.5 + 0.25 * dyadic(rng, 64);
    const double base = 0.25 * dyadic(rng, 64);
    for (int32_t j = 0; j < m; ++j) {
      f[p][j] = {static_cast<double>(j)};
      payoff.weights[p][j] = f[p][j];
      payoff.benefits[p][j] =
          base + lift * static_cast<double>(j) / static_cast<double>(m - 1);
    }
    payoff.rates[p] = 0.5 + 0.5 * dyadic(rng, 64);
  }
  return AggregativeGame(counts, 1, static_cast<double>(n) * (m - 1),
                         static_cast<double>(m - 1), std::move(f),
                         std::move(payoff));
}

AggregativeGame random_aggregative_game(int n, const std::vector<int32_t>& m,
                                        int k, std::uint64_t seed) {
  if (static_cast<int>(m.size()) != n)
    throw ArgumentError("random_aggregative_game: m must list one count per player");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::vector<double>>> f(n);
  LinearPayoff payoff;
  payoff.offsets.resize(n);
  payoff.coeffs.resize(n);
  for (int p = 0; p < n; ++p) {
    f[p].resize(m[p]);
    payoff.offsets[p].resize(m[p]);
    for (int32_t a = 0; a < m[p]; ++a) {
      f[p][a].resize(k);
      for (int d = 0; d < k; ++d)
        f[p][a][d] = 2.0 * dyadic(rng, 1 << 20) - 1.0;  // dense in [-1, 1]
      payoff.offsets[p][a] = dyadic(rng, 256);
    }
    payoff.coeffs[p].resize(k);
    double l1 = 0.0;
    for (int d = 0; d < k; ++d) {
      payoff.coeffs[p][d] = 2.0 * dyadic(rng, 256) - 1.0;
      l1 += std::abs(payoff.coeffs[p][d]);
    }
    if (l1 > 0.0) {
      const double shrink = (0.25 + 0.75 * dyadic(rng, 64)) / l1;
      for (int d = 0; d < k; ++d) payoff.coeffs[p][d] *= shrink;
    }
  }
  return AggregativeGame(m, k, static_cast<double>(n), 1.0, std::move(f),
                         std::move(payoff));
}

ScalingVector random_scaling_vector(const RegretIndexSpace& space,
                                    std::uint64_t seed, double hi) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(space.dim());
  for (double& x : v) x = hi * dyadic(rng, 1024);
  return ScalingVector(space, std::move(v));
}

CorrelatedDistribution random_distribution(const ProfileSpace& space,
                                           std::uint64_t seed,
                                           int support_size) {
  std::mt19937_64 rng(seed);
  const std::size_t P = space.size();
  std::set<std::size_t> picked;
  const std::size_t want =
      std::min<std::size_t>(P, static_cast<std::size_t>(support_size));
  while (picked.size() < want) picked.insert(rng() % P);
  std::vector<double> masses;
  double total = 0.0;
  for (std::size_t i = 0; i < want; ++i) {
    masses.push_back(1.0 + static_cast<double>(rng() % 64));
    total += masses.back();
  }
  CorrelatedDistribution x;
  std::size_t i = 0;
  for (std::size_t r : picked) x.add(space.unrank(r), masses[i++] / total);
  return x;
}

}  // namespace ceopt
