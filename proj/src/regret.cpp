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

#include "ceopt/regret.hpp"

#include <cmath>

namespace ceopt {

RegretIndexSpace::RegretIndexSpace(RegretMode mode,
                                   std::vector<int32_t> action_counts,
                                   int pareto_player)
    : mode_(mode), counts_(std::move(action_counts)),
      pareto_player_(pareto_player) {
  if (counts_.empty())
    throw ValidationError("RegretIndexSpace: at least one player");
  offsets_.resize(counts_.size());
  int off = 0;
  for (std::size_t p = 0; p < counts_.size(); ++p) {
    if (counts_[p] < 1)
      throw ValidationError("RegretIndexSpace: action counts must be >= 1");
    offsets_[p] = off;
    off += mode_ == RegretMode::kCceWelfare
               ? counts_[p]
               : counts_[p] * (counts_[p] - 1);
  }
  deviation_dim_ = off;
  switch (mode_) {
    case RegretMode::kCeWelfare:
    case RegretMode::kCceWelfare:
      objective_dim_ = 1;
      break;
    case RegretMode::kCeEgalitarian:
      objective_dim_ = static_cast<int>(counts_.size());
      break;
    case RegretMode::kCePareto:
      objective_dim_ = 1;
      if (pareto_player_ < 0 ||
          pareto_player_ >= static_cast<int>(counts_.size()))
        throw ArgumentError("RegretIndexSpace: Pareto mode needs a player q");
      break;
  }
}

int RegretIndexSpace::deviation_index(int p, int i, int j) const {
  if (mode_ == RegretMode::kCceWelfare)
    throw ArgumentError("deviation_index: CCE mode indexes by (p, j) only");
  if (i == j) throw ArgumentError("deviation_index: i == j");
  const int32_t m = counts_[p];
  return offsets_[p] + i * (m - 1) + (j > i ? j - 1 : j);
}

int RegretIndexSpace::cce_index(int p, int j) const {
  if (mode_ != RegretMode::kCceWelfare)
    throw ArgumentError("cce_index: only valid in CCE mode");
  return offsets_[p] + j;
}

ScalingVector::ScalingVector(RegretIndexSpace s, std::vector<double> values)
    : space(std::move(s)), v(std::move(values)) {
  if (static_cast<int>(v.size()) != space.dim())
    throw DimensionError("ScalingVector: wrong dimension");
  for (double x : v)
    if (!(x >= 0.0) || !std::isfinite(x))
      throw ArgumentError("ScalingVector: components must be nonnegative");
}

double scaled_regret(const ScalingVector& y, const RegretVector& r) {
  if (!(y.space == r.space))
    throw DimensionError("scaled_regret: index spaces differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < y.v.size(); ++i) acc += y.v[i] * r.v[i];
  return acc;
}

namespace detail {

std::vector<CePair> ce_pairs(const std::vector<int32_t>& counts) {
  std::vector<CePair> pairs;
  for (int p = 0; p < static_cast<int>(counts.size()); ++p)
    for (int i = 0; i < counts[p]; ++i)
      for (int j = 0; j < counts[p]; ++j)
        if (i != j) pairs.push_back({p, i, j});
  return pairs;
}

std::vector<CcePair> cce_pairs(const std::vector<int32_t>& counts) {
  std::vector<CcePair> pairs;
  for (int p = 0; p < static_cast<int>(counts.size()); ++p)
    for (int j = 0; j < counts[p]; ++j) pairs.push_back({p, j});
  return pairs;
}

}  // namespace detail

}  // namespace ceopt
