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

#ifndef LTW_REDUCTION_HPP_
#define LTW_REDUCTION_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "ltw/bilayer.hpp"
#include "ltw/strategy.hpp"

namespace ltw {

// A one-query reduction of f to g: the query map, the answer map and the
// secret map. Any of them may return nullopt, which fails validation.
struct ReductionTriple {
  std::function<std::optional<Term>(const Term& pub)> query;
  std::function<std::optional<Term>(const Term& pub, const Term& answer)> answer;
  std::function<std::optional<Term>(const Term& pub, const Term& secret)> secret;
  std::string label;
};

// Explicit finite tables, as produced by the solver.
struct TripleTable {
  std::map<Term, Term> query;
  std::map<std::pair<Term, Term>, Term> answer;
  std::map<std::pair<Term, Term>, Term> secret;

  ReductionTriple triple(std::string label = "table") const;
  // Lines `query n -> u`, `answer n m -> v`, `secret n | c -> z`.
  std::string str() const;
  friend bool operator==(const TripleTable& a, const TripleTable& b) {
    return a.query == b.query && a.answer == b.answer && a.secret == b.secret;
  }
};

struct TripleCheck {
  bool valid = true;
  std::string failure;  // first failing cell, empty when valid
  std::uint64_t cells = 0;
};

// Full scan of dom(f).
TripleCheck validate_triple(const BilayerFn& f, const BilayerFn& g,
                            const ReductionTriple& t);

// Arthur queries query(n) and terminates with answer(n, m); Nimue supplies
// secret(n, c). Depth 1.
Witness lift(const ReductionTriple& t);

// (pub, m) keys written as "n m".
std::string format_pair(const Term& a, const Term& b, const char* sep);

}  // namespace ltw

#endif  // LTW_REDUCTION_HPP_
