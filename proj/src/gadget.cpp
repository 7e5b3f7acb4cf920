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

#include "ceopt/gadget.hpp"

#include <cstdint>
#include <sstream>
#include <vector>

namespace ceopt {

namespace {

constexpr double kGadgetTolerance = 1e-12;

std::string profile_string(const ActionProfile& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t p = 0; p < a.size(); ++p) os << (p ? "," : "") << a[p];
  os << "]";
  return os.str();
}

}  // namespace

ActionProfile GadgetGame::all_augmented() const {
  ActionProfile b(std::vector<int32_t>(players(), 0));
  for (int p = 0; p < players(); ++p) b[p] = augmented_action(p);
  return b;
}

int GadgetGame::augmented_count(const ActionProfile& a) const {
  space_.validate(a);
  int k = 0;
  for (int p = 0; p < players(); ++p)
    if (a[p] == augmented_action(p)) ++k;
  return k;
}

double GadgetGame::base_welfare(const ActionProfile& a) const {
  double w = 0.0;
  for (int p = 0; p < players(); ++p) w += base_.utility(p, a);
  return w;
}

double GadgetGame::utility(int p, const ActionProfile& a) const {
  if (override_) return override_(p, a);
  const int k = augmented_count(a);
  if (k == 0) return base_welfare(a) / players();
  if (k == 1)
    return a[p] == augmented_action(p) ? opt_over_n_ : 0.0;
  return a[p] == augmented_action(p) ? eps_over_n_ : 0.0;
}

SuccinctGameOracle GadgetGame::to_succinct() const {
  GadgetGame copy = *this;
  return SuccinctGameOracle(
      space_.action_counts(),
      [copy](int p, const ActionProfile& a) { return copy.utility(p, a); });
}

GadgetGame build_gadget(const SuccinctGameOracle& base, double opt,
                        std::optional<double> eps) {
  const int n = base.players();
  if (!(opt > 0.0) || opt > static_cast<double>(n))
    throw ArgumentError("build_gadget: need 0 < opt <= n");
  const double floor_eps = opt / n;
  const double e = eps.value_or(floor_eps);
  if (!(opt > e) || !(e >= floor_eps))
    throw ArgumentError("build_gadget: need opt > eps >= opt/n");

  GadgetGame g;
  g.base_ = base;
  std::vector<int32_t> counts = base.space().action_counts();
  for (auto& m : counts) ++m;
  g.space_ = ProfileSpace(std::move(counts));
  g.opt_ = opt;
  g.eps_ = e;
  g.opt_over_n_ = opt / n;
  g.eps_over_n_ = e / n;
  return g;
}

GadgetGame build_gadget(const ExplicitGame& base, double opt,
                        std::optional<double> eps) {
  GadgetGame g = build_gadget(SuccinctGameOracle(base), opt, eps);
  g.base_explicit_ = base;
  return g;
}

GadgetGame build_ant_gadget(const ExplicitGame& base, int tau) {
  const int n = base.players();
  if (n < 4) throw ArgumentError("build_ant_gadget: needs at least 4 players");
  if (tau < 0 || tau >= n)
    throw ArgumentError("build_ant_gadget: tau must lie in {0, ..., n-1}");
  const double opt = static_cast<double>(tau + 1);
  return build_gadget(base, opt, opt / n);
}

double gadget_potential(const GadgetGame& g, const ActionProfile& a) {
  const int k = g.augmented_count(a);
  if (k == 0) return g.base_welfare(a) / g.players();
  return g.opt_over_n() + static_cast<double>(k - 1) * g.eps_over_n();
}

namespace {

// Potential equality and the welfare cap at one profile; returns a bitmask
// (1 = potential mismatch, 2 = augmented welfare above w'(b)).
int check_profile(const GadgetGame& g, const ActionProfile& a, double wb,
                  int* player, int* action) {
  int bad = 0;
  const int n = g.players();
  ActionProfile dev = a;
  const double phi_a = gadget_potential(g, a);
  for (int p = 0; p < n && !(bad & 1); ++p) {
    const double up_a = g.utility(p, a);
    for (int32_t alt = 0; alt < g.actions(p); ++alt) {
      if (alt == a[p]) continue;
      dev[p] = alt;
      const double du = up_a - g.utility(p, dev);
      const double dphi = phi_a - gadget_potential(g, dev);
      if (std::abs(du - dphi) > kGadgetTolerance) {
        bad |= 1;
        if (player) *player = p;
        if (action) *action = alt;
        break;
      }
    }
    dev[p] = a[p];
  }
  if (g.augmented_count(a) > 0) {
    double w = 0.0;
    for (int p = 0; p < n; ++p) w += g.utility(p, a);
    if (w > wb + kGadgetTolerance) bad |= 2;
  }
  return bad;
}

GadgetStructureReport finish_report(const GadgetGame& g,
                                    const std::vector<uint8_t>& flags,
                                    GadgetStructureReport rep) {
  const ProfileSpace& space = g.space();
  const double wb = welfare(g, g.all_augmented());
  for (std::size_t r = 0; r < flags.size(); ++r) {
    if (!flags[r]) continue;
    int player = -1, action = -1;
    const ActionProfile a = space.unrank(r);
    const int bad = check_profile(g, a, wb, &player, &action);
    if ((bad & 1) && rep.potential_exact) {
      rep.potential_exact = false;
      rep.witness = a;
      rep.witness_player = player;
      rep.witness_action = action;
      rep.failing_check = "potential";
    }
    if ((bad & 2) && rep.augmented_welfare_ok) {
      rep.augmented_welfare_ok = false;
      if (rep.failing_check.empty()) {
        rep.witness = a;
        rep.failing_check = "augmented-welfare";
      }
    }
    if (!rep.potential_exact && !rep.augmented_welfare_ok) break;
  }
  return rep;
}

GadgetStructureReport check_nash_at_b(const GadgetGame& g) {
  GadgetStructureReport rep;
  const ActionProfile b = g.all_augmented();
  ActionProfile dev = b;
  for (int p = 0; p < g.players(); ++p) {
    const double ub = g.utility(p, b);
    for (int32_t j = 0; j < g.actions(p); ++j) {
      if (j == b[p]) continue;
      dev[p] = j;
      if (g.utility(p, dev) > ub + kGadgetTolerance) {
        rep.nash_at_b = false;
        rep.witness = b;
        rep.witness_player = p;
        rep.witness_action = j;
        rep.failing_check = "nash";
        return rep;
      }
    }
    dev[p] = b[p];
  }
  return rep;
}

}  // namespace

GadgetStructureReport verify_gadget_structure(const GadgetGame& g,
                                              std::size_t profile_cap) {
  const ProfileSpace& space = g.space();
  if (space.size() > profile_cap)
    throw CapacityError("verify_gadget_structure: profile count exceeds cap");
  GadgetStructureReport rep = check_nash_at_b(g);
  const double wb = welfare(g, g.all_augmented());
  const auto total = static_cast<std::int64_t>(space.size());
  std::vector<uint8_t> flags(space.size(), 0);
#pragma omp parallel for schedule(static) if (total > 256)
  for (std::int64_t r = 0; r < total; ++r) {
    const ActionProfile a = space.unrank(static_cast<std::size_t>(r));
    flags[static_cast<std::size_t>(r)] =
        static_cast<uint8_t>(check_profile(g, a, wb, nullptr, nullptr));
  }
  return finish_report(g, flags, std::move(rep));
}

namespace reference {

GadgetStructureReport verify_gadget_structure(const GadgetGame& g,
                                              std::size_t profile_cap) {
  const ProfileSpace& space = g.space();
  if (space.size() > profile_cap)
    throw CapacityError("verify_gadget_structure: profile count exceeds cap");
  GadgetStructureReport rep = check_nash_at_b(g);
  const double wb = welfare(g, g.all_augmented());
  std::vector<uint8_t> flags(space.size(), 0);
  ActionProfile a = space.first();
  std::size_t r = 0;
  do {
    flags[r] = static_cast<uint8_t>(check_profile(g, a, wb, nullptr, nullptr));
    ++r;
  } while (space.next(a));
  return finish_report(g, flags, std::move(rep));
}

}  // namespace reference

void require_gadget_structure(const GadgetGame& g) {
  const GadgetStructureReport rep = verify_gadget_structure(g);
  if (rep.passed()) return;
  std::ostringstream os;
  os << "gadget structure check '" << rep.failing_check
     << "' failed at witness profile " << profile_string(rep.witness);
  if (rep.witness_player >= 0)
    os << " (player " << rep.witness_player << ", deviation "
       << rep.witness_action << ")";
  throw StructuralViolation(os.str());
}

}  // namespace ceopt
