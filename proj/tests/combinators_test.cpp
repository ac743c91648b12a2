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

#include <random>

#include "ltw/combinators.hpp"
#include "ltw/engine.hpp"
#include "ltw/reduction.hpp"
#include "ltw/solver.hpp"
#include "support.hpp"

using namespace ltw;

namespace {

Term T(const char* s) { return Term::parse(s); }

Witness found(const BilayerFn& f, const BilayerFn& g, int depth) {
  const auto r = solve_lt(f, g, depth);
  REQUIRE(r.found());
  return r.witness();
}

}  // namespace

TEST_CASE("join and meet tables") {
  const BilayerFn j = join(error(1, 2), error(1, 3));
  CHECK(j.publics() == std::vector<Term>{T("inl *"), T("inr *")});
  CHECK(*j.cell(T("inr *"), T("inr {2}")) == ValueSet{T("0"), T("1")});
  CHECK_FALSE(j.contains(T("inl *"), T("inr {0}")));

  const BilayerFn m = meet(error(1, 2), id_fn(2));
  CHECK(m.publics().size() == 2);
  CHECK(*m.cell(T("(*,1)"), T("({0},*)")) == ValueSet{T("inl 1"), T("inr 1")});
}

TEST_CASE("meet sits below both parts") {
  const BilayerFn f = error(1, 2);
  const BilayerFn g = error(1, 3);
  const BilayerFn m = meet(f, g);
  for (int side = 0; side < 2; ++side) {
    const BilayerFn& part = side == 0 ? f : g;
    ReductionTriple t;
    t.query = [side](const Term& n) { return std::optional<Term>(n.items()[side]); };
    t.answer = [side](const Term&, const Term& a) {
      return std::optional<Term>(Term::tagged(side, a));
    };
    t.secret = [side](const Term&, const Term& c) {
      return std::optional<Term>(c.items()[side]);
    };
    CHECK(validate_triple(m, part, t).valid);
    CHECK(verify_winning(m, part, lift(t)).winning);
  }
}

TEST_CASE("pair and sum tables") {
  Multifunction f{{T("0"), {T("0"), T("1")}}, {T("1"), {}}};
  const BilayerFn p = pair(f, error(1, 2));
  CHECK(*p.cell(T("0"), T("{0}")) == ValueSet{T("(0,1)"), T("(1,1)")});
  CHECK(p.cell(T("1"), T("{1}"))->empty());
  CHECK_THROWS_AS(pair(f, id_fn(2)), Error);

  const BilayerFn s = sum({{2, error(1, 2)}, {3, error(1, 3)}});
  CHECK(s.publics() == std::vector<Term>{T("(2,*)"), T("(3,*)")});
  CHECK(s.row(T("(3,*)")).size() == 3);
}

TEST_CASE("composition chains error(1,4) <= error(1,3) <= error(1,2)") {
  const Witness outer = found(error(1, 4), error(1, 3), 1);
  const Witness inner = found(error(1, 3), error(1, 2), 1);
  const Witness w = compose(outer, inner);
  CHECK(w.depth == 1);
  CHECK(verify_winning(error(1, 4), error(1, 2), w).winning);
  const Witness twice = compose(w, copy_witness());
  CHECK(verify_winning(error(1, 4), error(1, 2), twice).winning);
}

TEST_CASE("join and sum witnesses route by input") {
  const BilayerFn target = error(1, 2);
  const Witness a = found(error(1, 3), target, 1);
  const Witness b = found(error(1, 4), target, 1);
  CHECK(verify_winning(join(error(1, 3), error(1, 4)), target, join_witness(a, b)).winning);
  const BilayerFn s = sum({{0, error(1, 3)}, {1, error(1, 4)}, {5, target}});
  const Witness sw = sum_witness({{0, a}, {1, b}, {5, copy_witness()}});
  CHECK(verify_winning(s, target, sw).winning);
}

TEST_CASE("composed random witnesses still win") {
  std::mt19937_64 rng(5);
  int composed = 0;
  for (int i = 0; i < 300 && composed < 25; ++i) {
    const BilayerFn f = testing::random_fn(rng, "f", 2, 2, 2, false);
    const BilayerFn g = testing::random_fn(rng, "g", 2, 2, 2, false);
    const BilayerFn h = testing::random_fn(rng, "h", 2, 2, 2, true);
    const auto fg = solve_lt(f, g, 2);
    const auto gh = solve_lt(g, h, 2);
    if (!fg.found() || !gh.found()) continue;
    ++composed;
    const Witness w = compose(fg.witness(), gh.witness());
    CHECK(w.depth == 4);
    CHECK(verify_winning(f, h, w).winning);
  }
  CHECK(composed >= 10);
}
