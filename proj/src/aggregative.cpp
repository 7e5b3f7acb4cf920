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

#include "ceopt/aggregative.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ceopt {

namespace {

constexpr double kRangeSlack = 1e-9;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw ValidationError(std::string("AggregativeGame: non-finite ") + what);
}

}  // namespace

int64_t round_to_grid(double value, double delta) {
  if (!(delta > 0.0)) throw ArgumentError("grid step must be positive");
  // llround rounds halfway cases away from zero, which is the declared rule.
  return std::llround(value / delta);
}

AggregativeGame::AggregativeGame(
    std::vector<int32_t> action_counts, int dimension, double aggregate_bound,
    double contribution_bound,
    std::vector<std::vector<std::vector<double>>> contributions,
    PayoffFamily family)
    : space_(std::move(action_counts)),
      k_(dimension),
      W_(aggregate_bound),
      Wprime_(contribution_bound),
      f_(std::move(contributions)),
      family_(std::move(family)) {
  validate();
}

void AggregativeGame::validate() const {
  const int n = space_.players();
  if (k_ < 1 || k_ > kMaxAggDim)
    throw ValidationError("AggregativeGame: dimension must be in [1,4]");
  if (!(W_ >= 0.0) || !(Wprime_ >= 0.0))
    throw ValidationError("AggregativeGame: bounds must be nonnegative");
  if (static_cast<int>(f_.size()) != n)
    throw ValidationError("AggregativeGame: contribution table has wrong player count");
  for (int p = 0; p < n; ++p) {
    if (static_cast<int32_t>(f_[p].size()) != space_.actions(p))
      throw ValidationError("AggregativeGame: contribution table has wrong action count");
    for (const auto& vec : f_[p]) {
      if (static_cast<int>(vec.size()) != k_)
        throw ValidationError("AggregativeGame: contribution vector has wrong dimension");
      for (double v : vec) {
        require_finite(v, "contribution");
        if (std::abs(v) > Wprime_ + kRangeSlack)
          throw ValidationError("AggregativeGame: contribution exceeds declared bound");
      }
    }
  }

  // Interval hull of S(a) must stay inside the declared aggregate range.
  for (int c = 0; c < k_; ++c) {
    double lo = 0.0, hi = 0.0;
    for (int p = 0; p < n; ++p) {
      double pmin = f_[p][0][c], pmax = f_[p][0][c];
      for (const auto& vec : f_[p]) {
        pmin = std::min(pmin, vec[c]);
        pmax = std::max(pmax, vec[c]);
      }
      lo += pmin;
      hi += pmax;
    }
    if (lo < -W_ - kRangeSlack || hi > W_ + kRangeSlack)
      throw ValidationError(
          "AggregativeGame: aggregate range escapes [-W, W]; raise W or shrink "
          "contributions");
  }

  // Family shape checks plus the bounded-influence contract (constant <= 1).
  if (const auto* lin = std::get_if<LinearPayoff>(&family_)) {
    if (static_cast<int>(lin->offsets.size()) != n ||
        static_cast<int>(lin->coeffs.size()) != n)
      throw ValidationError("linear payoff: wrong player count");
    for (int p = 0; p < n; ++p) {
      if (static_cast<int32_t>(lin->offsets[p].size()) != space_.actions(p))
        throw ValidationError("linear payoff: wrong action count");
      if (static_cast<int>(lin->coeffs[p].size()) != k_)
        throw ValidationError("linear payoff: wrong coefficient dimension");
      for (double v : lin->offsets[p]) require_finite(v, "offset");
      double l1 = 0.0;
      for (double v : lin->coeffs[p]) {
        require_finite(v, "coefficient");
        l1 += std::abs(v);
      }
      if (l1 > 1.0 + 1e-12)
        throw ValidationError(
            "linear payoff: |coeff|_1 > 1 violates bounded influence");
    }
  } else if (const auto* con = std::get_if<CongestionPayoff>(&family_)) {
    if (static_cast<int>(con->benefits.size()) != n ||
        static_cast<int>(con->weights.size()) != n ||
        static_cast<int>(con->rates.size()) != n)
      throw ValidationError("congestion payoff: wrong player count");
    if (!(con->scale > 0.0))
      throw ValidationError("congestion payoff: scale must be positive");
    for (int p = 0; p < n; ++p) {
      if (static_cast<int32_t>(con->benefits[p].size()) != space_.actions(p) ||
          static_cast<int32_t>(con->weights[p].size()) != space_.actions(p))
        throw ValidationError("congestion payoff: wrong action count");
      for (double v : con->benefits[p]) require_finite(v, "benefit");
      require_finite(con->rates[p], "rate");
      if (con->rates[p] < 0.0)
        throw ValidationError("congestion payoff: negative rate");
      for (int32_t a = 0; a < space_.actions(p); ++a) {
        if (static_cast<int>(con->weights[p][a].size()) != k_)
          throw ValidationError("congestion payoff: wrong weight dimension");
        double l1 = 0.0;
        for (double v : con->weights[p][a]) {
          require_finite(v, "weight");
          l1 += std::abs(v);
        }
        if (con->rates[p] * l1 / con->scale > 1.0 + 1e-12)
          throw ValidationError(
              "congestion payoff: rate*|weight|_1/scale > 1 violates bounded "
              "influence");
      }
    }
  } else {
    const auto& tab = std::get<TabulatedPayoff>(family_);
    if (!(tab.step > 0.0))
      throw ValidationError("tabulated payoff: step must be positive");
    if (static_cast<int>(tab.lo.size()) != k_ ||
        static_cast<int>(tab.hi.size()) != k_)
      throw ValidationError("tabulated payoff: bounds have wrong dimension");
    std::size_t cells = 1;
    for (int c = 0; c < k_; ++c) {
      if (tab.hi[c] < tab.lo[c])
        throw ValidationError("tabulated payoff: hi < lo");
      cells *= static_cast<std::size_t>(tab.hi[c] - tab.lo[c] + 1);
    }
    if (static_cast<int>(tab.values.size()) != n)
      throw ValidationError("tabulated payoff: wrong player count");
    for (int p = 0; p < n; ++p) {
      if (static_cast<int32_t>(tab.values[p].size()) != space_.actions(p))
        throw ValidationError("tabulated payoff: wrong action count");
      for (const auto& row : tab.values[p]) {
        if (row.size() != cells)
          throw ValidationError("tabulated payoff: wrong cell count");
        for (double v : row) {
          require_finite(v, "table value");
          if (v < 0.0 || v > 1.0)
            throw ValidationError("tabulated payoff: value outside [0,1]");
        }
      }
    }
    // Spot-validate bounded influence on lattice neighbors.
    std::vector<std::size_t> strides(k_, 1);
    for (int c = k_ - 2; c >= 0; --c)
      strides[c] = strides[c + 1] *
                   static_cast<std::size_t>(tab.hi[c + 1] - tab.lo[c + 1] + 1);
    for (int p = 0; p < n; ++p) {
      for (int32_t a = 0; a < space_.actions(p); ++a) {
        const auto& row = tab.values[p][a];
        const std::size_t step = cells > 512 ? cells / 512 : 1;
        for (std::size_t i = 0; i < cells; i += step) {
          for (int c = 0; c < k_; ++c) {
            const std::size_t j = i + strides[c];
            const int64_t along =
                static_cast<int64_t>(i / strides[c]) % (tab.hi[c] - tab.lo[c] + 1);
            if (along + 1 > tab.hi[c] - tab.lo[c]) continue;
            if (std::abs(row[j] - row[i]) > tab.step * (1.0 + 1e-9))
              throw ValidationError(
                  "tabulated payoff: adjacent cells violate bounded influence");
          }
        }
      }
    }
  }
}

std::vector<double> AggregativeGame::aggregator_value(
    const ActionProfile& a) const {
  space_.validate(a);
  std::vector<double> s(k_, 0.0);
  if (grid_) {
    const GridCoord c = total_coords(a);
    for (int d = 0; d < k_; ++d) s[d] = static_cast<double>(c[d]) * grid_->delta;
  } else {
    for (int p = 0; p < players(); ++p)
      for (int d = 0; d < k_; ++d) s[d] += f_[p][a[p]][d];
  }
  for (int d = 0; d < k_; ++d) {
    if (std::abs(s[d]) > W_ + kRangeSlack) {
      std::ostringstream os;
      os << "aggregator value component " << d << " = " << s[d]
         << " escapes [-W, W] with W = " << W_;
      throw InvariantViolation(os.str());
    }
  }
  return s;
}

double AggregativeGame::payoff(int p, int32_t action,
                               const std::vector<double>& s) const {
  if (const auto* lin = std::get_if<LinearPayoff>(&family_)) {
    double v = lin->offsets[p][action];
    for (int c = 0; c < k_; ++c) v += lin->coeffs[p][c] * s[c];
    return clamp01(v);
  }
  if (const auto* con = std::get_if<CongestionPayoff>(&family_)) {
    double load = 0.0;
    for (int c = 0; c < k_; ++c) load += con->weights[p][action][c] * s[c];
    return clamp01(con->benefits[p][action] -
                   con->rates[p] * load / con->scale);
  }
  const auto& tab = std::get<TabulatedPayoff>(family_);
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int c = k_ - 1; c >= 0; --c) {
    int64_t cell = std::llround(s[c] / tab.step);
    cell = std::clamp(cell, tab.lo[c], tab.hi[c]);
    idx += static_cast<std::size_t>(cell - tab.lo[c]) * stride;
    stride *= static_cast<std::size_t>(tab.hi[c] - tab.lo[c] + 1);
  }
  return tab.values[p][action][idx];
}

double AggregativeGame::utility(int p, const ActionProfile& a) const {
  if (grid_) return payoff_at(p, a[p], total_coords(a));
  return payoff(p, a[p], aggregator_value(a));
}

double AggregativeGame::lipschitz_constant() const {
  if (const auto* lin = std::get_if<LinearPayoff>(&family_)) {
    double worst = 0.0;
    for (const auto& c : lin->coeffs) {
      double l1 = 0.0;
      for (double v : c) l1 += std::abs(v);
      worst = std::max(worst, l1);
    }
    return worst;
  }
  if (const auto* con = std::get_if<CongestionPayoff>(&family_)) {
    double worst = 0.0;
    for (int p = 0; p < players(); ++p) {
      for (int32_t a = 0; a < actions(p); ++a) {
        double l1 = 0.0;
        for (double v : con->weights[p][a]) l1 += std::abs(v);
        worst = std::max(worst, con->rates[p] * l1 / con->scale);
      }
    }
    return worst;
  }
  return 1.0;  // tabulated families declare the contract bound itself
}

GridCoord AggregativeGame::total_coords(const ActionProfile& a) const {
  GridCoord c{};
  for (int p = 0; p < players(); ++p)
    for (int d = 0; d < k_; ++d) c[d] += grid_->coords[p][a[p]][d];
  return c;
}

double AggregativeGame::payoff_at(int p, int32_t action,
                                  const GridCoord& c) const {
  std::vector<double> s(k_);
  for (int d = 0; d < k_; ++d) s[d] = static_cast<double>(c[d]) * grid_->delta;
  return payoff(p, action, s);
}

SuccinctGameOracle AggregativeGame::to_succinct() const {
  AggregativeGame copy = *this;
  return SuccinctGameOracle(
      space_.action_counts(),
      [copy](int p, const ActionProfile& a) { return copy.utility(p, a); });
}

AggregativeGame discretize_aggregative(const AggregativeGame& game,
                                       double delta) {
  if (!(delta > 0.0)) throw ArgumentError("discretize: delta must be positive");
  const int n = game.players();
  const int k = game.dimension();
  std::vector<std::vector<GridCoord>> coords(n);
  auto f = game.f_;
  double max_shift = 0.0;
  for (int p = 0; p < n; ++p) {
    coords[p].resize(f[p].size());
    for (std::size_t a = 0; a < f[p].size(); ++a) {
      GridCoord c{};
      for (int d = 0; d < k; ++d) {
        c[d] = round_to_grid(f[p][a][d], delta);
        const double snapped = static_cast<double>(c[d]) * delta;
        max_shift = std::max(max_shift, std::abs(f[p][a][d] - snapped));
        f[p][a][d] = snapped;
      }
      coords[p][a] = c;
    }
  }
  AggregativeGame out(game.space().action_counts(), k,
                      game.aggregate_bound() + n * delta,
                      game.contribution_bound() + delta, std::move(f),
                      game.family_);
  out.grid_ = AggregativeGame::GridInfo{delta, std::move(coords), max_shift};
  return out;
}

}  // namespace ceopt
