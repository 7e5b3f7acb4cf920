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

#ifndef CEOPT_COMMON_HPP_
#define CEOPT_COMMON_HPP_

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ceopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A profile, distribution, or vector does not match the game's shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A constructor input violates a documented invariant (e.g. utilities
// outside [0,1], a payoff family with Lipschitz constant > 1).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// An invalid argument to an operation (i == j, tau out of range, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// An enumeration, materialization, or grid exceeds its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A probability distribution whose total mass is too far from 1.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// A runtime invariant of a validated object failed (signals a bad game
// specification, e.g. an aggregator value outside its declared range).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A structural property of a constructed instance failed, with a witness.
class StructuralViolation : public Error {
 public:
  using Error::Error;
};

// A condition that cannot occur for valid inputs; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Reads a nonnegative integer override from the environment, used for the
// enumeration/materialization/grid caps.
inline std::size_t env_cap(const char* name, std::size_t fallback) {
  if (const char* s = std::getenv(name)) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0') return static_cast<std::size_t>(v);
  }
  return fallback;
}

}  // namespace ceopt

#endif  // CEOPT_COMMON_HPP_
