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

// Collapsing error(m,k) to a single-error problem through hard blocks.

#ifndef LTW_CATALOG_ERROR_THEOREM_HPP_
#define LTW_CATALOG_ERROR_THEOREM_HPP_

#include <cstdint>

#include "ltw/bilayer.hpp"
#include "ltw/reduction.hpp"
#include "ltw/strategy.hpp"

namespace ltw {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b);

// Hits left after consolidating m normal blocks into one hard block; at
// least one so a hard block can still be broken.
std::uint64_t consolidated_hits(std::uint64_t m, std::uint64_t k, std::uint64_t n);
// Size of the single-error target reached from error_hard(m,k,n).
std::uint64_t collapse_target(std::uint64_t m, std::uint64_t k, std::uint64_t n);

// join(error_hard(m*,k-m+1,n+1), error_hard(m-1,k,n)).
BilayerFn consolidation_target(std::uint64_t m, std::uint64_t k, std::uint64_t n);
// error_hard(m,k,n) <= consolidation_target(m,k,n): one left query per way
// of consolidating m normal blocks, then one right query.
Witness consolidation_strategy(std::uint64_t m, std::uint64_t k, std::uint64_t n);

// error(1,l) <=1 error(m,k) when ceil(k/m) <= l.
ReductionTriple easy_direction(std::uint64_t m, std::uint64_t k, std::uint64_t l);

// error(m,k) <=1 error_hard(m,k,0).
ReductionTriple error_to_hard(std::uint64_t m, std::uint64_t k);

// error_hard(m,k,n) <= error(1, collapse_target(m,k,n)).
Witness hard_collapse(std::uint64_t m, std::uint64_t k, std::uint64_t n);

// error(m,k) <= error(1, ceil(k/m)).
Witness collapse_chain(std::uint64_t m, std::uint64_t k);

}  // namespace ltw

#endif  // LTW_CATALOG_ERROR_THEOREM_HPP_
