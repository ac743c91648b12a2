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

// Clocked halting tables and choosing a non-halting index.

#ifndef LTW_CATALOG_LLPO_HPP_
#define LTW_CATALOG_LLPO_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ltw/bilayer.hpp"
#include "ltw/reduction.hpp"

namespace ltw {

// Halting stage of each index, kNever when it runs forever. Referee side.
struct ClockedTable {
  std::vector<std::uint64_t> stages;

  static ClockedTable from_term(const Term& t);
  Term term() const { return Term::stages(stages); }
  std::size_t size() const { return stages.size(); }
  std::vector<std::uint64_t> halting() const;

  // `stages: [3, never]`
  std::string str() const;
  static ClockedTable parse(std::string_view text);
};

// Arthur side: only "has j halted by stage s?" is observable.
class ClockedProbe {
 public:
  explicit ClockedProbe(const Term& t) : table_(ClockedTable::from_term(t)) {}
  std::size_t size() const { return table_.size(); }
  bool halted_by(std::size_t j, std::uint64_t stage) const {
    return table_.stages.at(j) <= stage;
  }

 private:
  ClockedTable table_;
};

// Every table over k indices with stages in 1..stage_bound or never and at
// most max_halts halting entries, in term order.
std::vector<Term> clocked_tables(std::uint64_t k, std::uint64_t stage_bound,
                                 std::uint64_t max_halts);

// Publics are the tables with at most m halts; the secret is *.
BilayerFn llpo(std::uint64_t m, std::uint64_t k, std::uint64_t stage_bound);

// llpo(m,k) <=1 error(m,k+1). The answer map probes stages up to
// stage_bound when Merlin answers k.
ReductionTriple llpo_reduction(std::uint64_t m, std::uint64_t k, std::uint64_t stage_bound);

// Indices where the race program halts on a two-entry table; at most one.
std::vector<std::uint64_t> psi_halting(const Term& table);
// {0,1} minus psi_halting.
ValueSet psi_values(const Term& table);
// The race problem over every two-entry table up to stage_bound.
BilayerFn psi_fn(std::uint64_t stage_bound);

}  // namespace ltw

#endif  // LTW_CATALOG_LLPO_HPP_
