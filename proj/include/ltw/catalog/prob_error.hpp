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

// Finitized probabilistic error: answer with the output of a staged machine
// on a secret, large enough set of oracle strings.

#ifndef LTW_CATALOG_PROB_ERROR_HPP_
#define LTW_CATALOG_PROB_ERROR_HPP_

#include <cstdint>
#include <set>
#include <vector>

#include "ltw/bilayer.hpp"
#include "ltw/reduction.hpp"
#include "ltw/strategy.hpp"

namespace ltw {

// Machines over {0,1}^oracle_bits with values below q. Each oracle string
// either never gets a value or gets one at a first stage in 1..stage_bound.
std::vector<Term> staged_machines(int oracle_bits, std::uint64_t q, int stage_bound);

// Publics are machines with at least one qualifying secret; secrets are sets
// A of oracle strings with |A| * q >= 2^T (q - p), all valued by the last
// stage; the cell is the set of values on A.
BilayerFn prob_error(int oracle_bits, std::uint64_t p, std::uint64_t q, int stage_bound);

// Scales r with 2^T | q * c * r for some count c; one error(p r, q r) per r.
std::set<std::uint64_t> stage_scales(int oracle_bits, std::uint64_t q);
// sum over r of error(p r, q r), indexed by r.
BilayerFn stage_target(int oracle_bits, std::uint64_t p, std::uint64_t q);

// What Arthur reads off a machine at one stage.
struct StageBlocks {
  std::uint64_t scale = 1;
  // value, first index, one past the last index; ascending by value.
  struct Block {
    std::uint64_t value, begin, end;
  };
  std::vector<Block> blocks;
};
StageBlocks stage_blocks(const Term& machine, std::uint64_t q, int stage);

// Nimue's wrong indices at one stage, padded to p * scale. Throws Error if
// more than p * scale indices are forced.
std::vector<std::uint64_t> stage_secret(const Term& machine, const Term& secret,
                                        std::uint64_t p, std::uint64_t q, int stage);

// prob_error <= stage_target, one query per stage.
Witness stage_strategy(int oracle_bits, std::uint64_t p, std::uint64_t q, int stage_bound);
// prob_error <= error(p, q): stage_strategy composed with collapse chains.
Witness prob_error_strategy(int oracle_bits, std::uint64_t p, std::uint64_t q,
                            int stage_bound);

// error(p,q) <=1 prob_error via the machine sending alpha to alpha*q/2^T.
// Needs q | 2^T; the machine is valued from stage 1.
ReductionTriple error_to_prob_error(int oracle_bits, std::uint64_t p, std::uint64_t q,
                                    int stage_bound);

}  // namespace ltw

#endif  // LTW_CATALOG_PROB_ERROR_HPP_
