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

#ifndef CEOPT_RATIONAL_HPP_
#define CEOPT_RATIONAL_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

namespace ceopt {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Reconstructs the small rational a double was rounded from, when one exists.
//
// Runs the continued-fraction expansion of v and returns the first convergent
// p/q with q <= max_denominator that lies within a few ulps of v. Values that
// are not within that distance of any such rational (generic reals) return
// nullopt. This makes decimal inputs like 0.2 or 1/3-of-a-dyadic behave as the
// intended ratios under exact arithmetic.
inline std::optional<Rational> rationalize(double v,
                                           int64_t max_denominator = 1000000) {
  if (!std::isfinite(v)) return std::nullopt;
  const double tol =
      32.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v));
  int64_t hp = 1, h = static_cast<int64_t>(std::floor(v));
  int64_t kp = 0, k = 1;
  double x = v;
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(v - static_cast<double>(h) / static_cast<double>(k)) <= tol)
      return Rational(h, k);
    const double frac = x - std::floor(x);
    if (frac <= 0.0) break;
    x = 1.0 / frac;
    const double af = std::floor(x);
    if (af > 4.0e9) break;  // next convergent blows past any small denominator
    const int64_t a = static_cast<int64_t>(af);
    const __int128 hn128 = static_cast<__int128>(a) * h + hp;
    const __int128 kn128 = static_cast<__int128>(a) * k + kp;
    if (kn128 > max_denominator) break;
    const int64_t hn = static_cast<int64_t>(hn128);
    const int64_t kn = static_cast<int64_t>(kn128);
    hp = h;
    h = hn;
    kp = k;
    k = kn;
  }
  return std::nullopt;
}

}  // namespace ceopt

#endif  // CEOPT_RATIONAL_HPP_
