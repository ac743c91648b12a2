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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ltw/closure.hpp"
#include "ltw/combinators.hpp"
#include "ltw/engine.hpp"
#include "ltw/reduction.hpp"
#include "ltw/solver.hpp"

using namespace ltw;

namespace {

Term T(const char* s) { return Term::parse(s); }

TripleTable identity_triple(const BilayerFn& f) {
  TripleTable t;
  for (const auto& [n, row] : f.cells()) {
    t.query.emplace(n, n);
    for (const auto& v : f.alphabet()) t.answer.emplace(std::make_pair(n, v), v);
    for (const auto& entry : row) {
      t.secret.emplace(std::make_pair(n, entry.first), entry.first);
    }
  }
  return t;
}

}  // namespace

TEST_CASE("closure of error(1,2) at depth 1") {
  const ClosureFn closure(error(1, 2), 1, nat_range(2));
  const BilayerFn& c = closure.fn();
  // Two constant tables plus four one-query tables.
  CHECK(c.publics().size() == 6);
  const Term copy = T("code[[] -> query *; [0] -> terminate 0; [1] -> terminate 1]");
  REQUIRE(c.has_public(copy));
  const ValueSet* cell = c.cell(copy, T("code[[] -> {0}]"));
  REQUIRE(cell);
  CHECK(*cell == ValueSet{T("1")});
  CHECK(ClosureFn::evaluate(error(1, 2), 1, copy, T("code[[] -> {1}]")) ==
        ValueSet{T("0")});
  // Too deep for the restricted game.
  const Term deep = T("code[[] -> query *; [0] -> query *; [1] -> terminate 1; "
                      "[0,0] -> terminate 0; [0,1] -> terminate 0]");
  CHECK_FALSE(ClosureFn::evaluate(error(1, 2), 1, deep, T("code[[] -> {1}; [0] -> {0}]")));
  CHECK(ClosureFn::evaluate(error(1, 2), 2, deep, T("code[[] -> {1}; [0] -> {0}]")));
}

TEST_CASE("a depth-2 witness becomes one query into the closure and back") {
  const BilayerFn g = error(1, 4);
  const BilayerFn h = error(1, 2);
  const auto r = solve_lt(g, h, 2);
  REQUIRE(r.found());
  const TripleTable oq = oq_from_lt(g, h, r.witness(), 2, g.alphabet());
  CHECK(validate_triple_lazy(g, h, 2, oq.triple()).valid);
  const ClosureFn closure(h, 2, g.alphabet());
  CHECK(validate_triple(g, closure.fn(), oq.triple()).valid);
  const Witness back = lt_from_oq(g, oq.triple(), 2);
  CHECK(verify_winning(g, h, back).winning);
}

TEST_CASE("a broken triple is rejected lazily") {
  const BilayerFn g = error(1, 4);
  const BilayerFn h = error(1, 2);
  const auto r = solve_lt(g, h, 1);
  REQUIRE(r.found());
  TripleTable t = oq_from_lt(g, h, r.witness(), 1, g.alphabet());
  for (auto& [key, v] : t.answer) v = T("0");
  const TripleCheck check = validate_triple_lazy(g, h, 1, t.triple());
  CHECK_FALSE(check.valid);
  CHECK(check.failure.find("escapes") != std::string::npos);
  CHECK_THROWS_AS(oq_from_lt(error(1, 3), h, copy_witness(), 1, nat_range(3)), Error);
}

TEST_CASE("closing twice adds nothing at depth 1") {
  const BilayerFn h = error(1, 2);
  const ClosureFn once(h, 1, nat_range(2));
  const ClosureFn twice(once.fn(), 1, nat_range(2));
  const auto direct = solve_one_query(twice.fn(), once.fn());
  CHECK(direct.triple.has_value());

  // Same conclusion by composing the two translated witnesses.
  const Witness w1 = lt_from_oq(once.fn(), identity_triple(once.fn()).triple(), 1);
  const Witness w2 = lt_from_oq(twice.fn(), identity_triple(twice.fn()).triple(), 1);
  CHECK(verify_winning(once.fn(), h, w1).winning);
  CHECK(verify_winning(twice.fn(), once.fn(), w2).winning);
  const Witness both = compose(w2, w1);
  CHECK(verify_winning(twice.fn(), h, both).winning);
  const TripleTable oq = oq_from_lt(twice.fn(), h, both, 1, nat_range(2));
  CHECK(validate_triple(twice.fn(), once.fn(), oq.triple()).valid);
}
