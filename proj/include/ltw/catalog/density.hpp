// Copyright 2026 The ltw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Eventually periodic sets, their density, and the finitized density error.

#ifndef LTW_CATALOG_DENSITY_HPP_
#define LTW_CATALOG_DENSITY_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ltw/bilayer.hpp"
#include "ltw/reduction.hpp"

namespace ltw {

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  // Reduced; throws Error on a zero denominator.
  static Rational of(std::uint64_t num, std::uint64_t den);
  std::string str() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Ones in the period over its length; the prefix does not matter.
Rational lower_density(const Term& periodic);
// Members of the set below `limit`.
std::vector<std::uint64_t> members_below(const Term& periodic, std::uint64_t limit);

// Periods of denerror secrets repeat this many times in the value window.
inline constexpr std::uint64_t kDensityWindow = 3;

// Public *, secrets the purely periodic sets with period length l and at
// most one gap; the cell is the secret cut to [0, 3l).
BilayerFn denerror(std::uint64_t l);

// error(1,l) <=1 denerror(l): the forbidden j becomes the gap, members y
// answer y mod l.
ReductionTriple denerror_reduction(std::uint64_t l);

}  // namespace ltw

#endif  // LTW_CATALOG_DENSITY_HPP_
