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

#include "ceopt/game.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ceopt {

namespace {
constexpr std::size_t kSizeLimit = std::size_t{1} << 62;
}

ProfileSpace::ProfileSpace(std::vector<int32_t> action_counts)
    : counts_(std::move(action_counts)) {
  if (counts_.empty())
    throw ValidationError("ProfileSpace: at least one player required");
  for (int32_t m : counts_)
    if (m < 1) throw ValidationError("ProfileSpace: action counts must be >= 1");
  strides_.assign(counts_.size(), 1);
  size_ = 1;
  for (int p = static_cast<int>(counts_.size()) - 1; p >= 0; --p) {
    strides_[p] = size_;
    if (size_ > kSizeLimit / static_cast<std::size_t>(counts_[p]))
      throw CapacityError("ProfileSpace: profile count exceeds 2^62");
    size_ *= static_cast<std::size_t>(counts_[p]);
  }
}

std::size_t ProfileSpace::rank(const ActionProfile& a) const {
  validate(a);
  std::size_t r = 0;
  for (std::size_t p = 0; p < counts_.size(); ++p)
    r += static_cast<std::size_t>(a[p]) * strides_[p];
  return r;
}

ActionProfile ProfileSpace::unrank(std::size_t r) const {
  ActionProfile a(std::vector<int32_t>(counts_.size(), 0));
  for (std::size_t p = 0; p < counts_.size(); ++p) {
    a[p] = static_cast<int32_t>(r / strides_[p]);
    r %= strides_[p];
  }
  return a;
}

bool ProfileSpace::next(ActionProfile& a) const {
  for (int p = static_cast<int>(counts_.size()) - 1; p >= 0; --p) {
    if (++a[p] < counts_[p]) return true;
    a[p] = 0;
  }
  return false;
}

bool ProfileSpace::contains(const ActionProfile& a) const {
  if (a.size() != counts_.size()) return false;
  for (std::size_t p = 0; p < counts_.size(); ++p)
    if (a[p] < 0 || a[p] >= counts_[p]) return false;
  return true;
}

void ProfileSpace::validate(const ActionProfile& a) const {
  if (!contains(a)) {
    std::ostringstream os;
    os << "profile [";
    for (std::size_t p = 0; p < a.size(); ++p)
      os << (p ? "," : "") << a[p];
    os << "] invalid for game shape";
    throw DimensionError(os.str());
  }
}

ExplicitGame::ExplicitGame(std::vector<int32_t> action_counts,
                           std::vector<double> utilities)
    : space_(std::move(action_counts)), utilities_(std::move(utilities)) {
  const std::size_t expected =
      static_cast<std::size_t>(space_.players()) * space_.size();
  if (utilities_.size() != expected)
    throw ValidationError("ExplicitGame: utility table has wrong size");
  for (double u : utilities_) {
    if (!(u >= 0.0 && u <= 1.0))
      throw ValidationError(
          "ExplicitGame: utilities must lie in [0,1]; use normalize_utilities "
          "for raw payoffs");
  }
}

void CorrelatedDistribution::add(ActionProfile a, double mass) {
  if (!(mass > 0.0))
    throw ValidationError("CorrelatedDistribution: mass must be positive");
  entries_[std::move(a)] += mass;
}

CorrelatedDistribution CorrelatedDistribution::point_mass(ActionProfile a) {
  CorrelatedDistribution x;
  x.add(std::move(a), 1.0);
  return x;
}

CorrelatedDistribution CorrelatedDistribution::uniform(
    const std::vector<ActionProfile>& as) {
  if (as.empty())
    throw ValidationError("CorrelatedDistribution: empty support");
  CorrelatedDistribution x;
  const double m = 1.0 / static_cast<double>(as.size());
  for (const auto& a : as) x.add(a, m);
  return x;
}

double CorrelatedDistribution::total_mass() const {
  double s = 0.0;
  for (const auto& [a, m] : entries_) s += m;
  return s;
}

double CorrelatedDistribution::mass(const ActionProfile& a) const {
  auto it = entries_.find(a);
  return it == entries_.end() ? 0.0 : it->second;
}

bool CorrelatedDistribution::normalized(double tol) const {
  return std::abs(total_mass() - 1.0) <= tol;
}

void CorrelatedDistribution::validate_for(const ProfileSpace& space,
                                          double tol) const {
  if (!normalized(tol))
    throw NormalizationError("distribution mass differs from 1 beyond tolerance");
  for (const auto& [a, m] : entries_) {
    space.validate(a);
    if (!(m > 0.0))
      throw ValidationError("distribution stores a nonpositive mass");
  }
}

ExplicitGame explicit_from_succinct(const SuccinctGameOracle& oracle,
                                    std::size_t profile_cap) {
  const ProfileSpace& space = oracle.space();
  if (space.size() > profile_cap) {
    std::ostringstream os;
    os << "explicit_from_succinct: " << space.size()
       << " profiles exceed cap " << profile_cap;
    throw CapacityError(os.str());
  }
  const int n = space.players();
  std::vector<double> u(static_cast<std::size_t>(n) * space.size());
  ActionProfile a = space.first();
  std::size_t r = 0;
  do {
    for (int p = 0; p < n; ++p) {
      const double v = oracle.utility(p, a);
      if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError("succinct oracle returned a utility outside [0,1]");
      u[static_cast<std::size_t>(p) * space.size() + r] = v;
    }
    ++r;
  } while (space.next(a));

  // Purity spot check: re-query a few entries and insist on identical values.
  const std::size_t probes = std::min<std::size_t>(space.size(), 8);
  for (std::size_t i = 0; i < probes; ++i) {
    const std::size_t rank = (i * 2654435761u) % space.size();
    const ActionProfile probe = space.unrank(rank);
    for (int p = 0; p < n; ++p) {
      if (oracle.utility(p, probe) !=
          u[static_cast<std::size_t>(p) * space.size() + rank])
        throw ValidationError("succinct oracle is not pure: repeated call differed");
    }
  }
  return ExplicitGame(space.action_counts(), std::move(u));
}

std::pair<ExplicitGame, NormalizationTransform> normalize_utilities(
    std::vector<int32_t> action_counts, const std::vector<double>& raw) {
  if (raw.empty()) throw ValidationError("normalize_utilities: empty tensor");
  const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
  NormalizationTransform t{*lo_it, *hi_it - *lo_it};
  std::vector<double> u(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    u[i] = std::clamp(t.apply(raw[i]), 0.0, 1.0);
  return {ExplicitGame(std::move(action_counts), std::move(u)), t};
}

}  // namespace ceopt
