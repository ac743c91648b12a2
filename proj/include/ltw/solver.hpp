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

#ifndef LTW_SOLVER_HPP_
#define LTW_SOLVER_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltw/bilayer.hpp"
#include "ltw/reduction.hpp"
#include "ltw/strategy.hpp"

namespace ltw {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct SearchCertificate {
  enum class Mode { kFound, kExhausted, kBudget };
  Mode mode = Mode::kExhausted;
  int depth = 0;
  std::uint64_t arthur_candidates = 0;  // Arthur moves tried
  std::uint64_t positions = 0;          // search nodes visited
  std::uint64_t budget = kDefaultBudget;

  const char* mode_name() const;
  std::string str() const;
};

struct OneQueryResult {
  std::optional<TripleTable> triple;
  SearchCertificate certificate;
};

// Canonically first (query, answer, secret) triple, per public input: the
// least query, then the lexicographically least answer map, then for each
// secret the least working one.
OneQueryResult solve_one_query(const BilayerFn& f, const BilayerFn& g,
                               std::uint64_t budget = kDefaultBudget);

struct LtResult {
  std::shared_ptr<const ArthurTable> arthur;
  std::shared_ptr<const NimueTable> nimue;
  SearchCertificate certificate;

  bool found() const { return arthur != nullptr; }
  Witness witness() const;
};

// Searches Arthur-Nimue pairs winning G(f, g) with at most `depth` queries.
LtResult solve_lt(const BilayerFn& f, const BilayerFn& g, int depth,
                  std::uint64_t budget = kDefaultBudget);

// dom(g) within dom(h) and h(n) within g(n) on dom(g).
bool refines(const Multifunction& h, const Multifunction& g);

struct PosetCell {
  SearchCertificate certificate;
  bool reducible() const {
    return certificate.mode == SearchCertificate::Mode::kFound;
  }
};

struct PosetReport {
  std::vector<std::string> names;
  int depth = 0;
  // cells[i][j] answers names[i] <= names[j].
  std::vector<std::vector<PosetCell>> cells;
  std::vector<std::string> reflexivity_failures;
  std::vector<std::string> transitivity_failures;

  bool inconclusive() const;
  // Hasse diagram; an arrow A -> B means B reduces to A.
  std::string dot() const;
  std::string json() const;
};

PosetReport poset(const std::vector<BilayerFn>& items, int depth,
                  std::uint64_t budget = kDefaultBudget);

inline constexpr int kPosetSchemaVersion = 1;

}  // namespace ltw

#endif  // LTW_SOLVER_HPP_
