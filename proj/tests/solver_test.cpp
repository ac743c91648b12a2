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

#include <algorithm>
#include <random>

#include "ltw/engine.hpp"
#include "ltw/reduction.hpp"
#include "ltw/solver.hpp"
#include "support.hpp"

using namespace ltw;

namespace {

Term T(const char* s) { return Term::parse(s); }

// Brute force over every (query, secret map, answer map); tiny inputs only.
bool one_query_exists(const BilayerFn& f, const BilayerFn& g) {
  for (const auto& [n, frow] : f.cells()) {
    bool some_u = false;
    for (const auto& u : g.publics()) {
      // For each c: is there z whose every answer m maps to a value in f(n|c)?
      // The answer map is shared across c, so enumerate it.
      std::vector<Term> answers;
      for (const auto& m : g.answers(u)) answers.push_back(m);
      std::vector<Term> values(f.alphabet().begin(), f.alphabet().end());
      std::vector<std::size_t> pick(answers.size(), 0);
      while (true) {
        bool all_c = true;
        for (const auto& [c, fvalues] : frow) {
          bool some_z = false;
          for (const auto& [z, gvalues] : g.row(u)) {
            bool ok = true;
            for (const auto& m : gvalues) {
              const auto idx = std::find(answers.begin(), answers.end(), m) - answers.begin();
              if (!fvalues.count(values[pick[idx]])) ok = false;
            }
            if (ok) some_z = true;
          }
          if (!some_z) all_c = false;
        }
        if (all_c) {
          some_u = true;
          break;
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == values.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
      if (some_u) break;
    }
    if (!some_u) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("error(1,3) reduces to error(1,2) with the identity answer map") {
  const auto r = solve_one_query(error(1, 3), error(1, 2));
  REQUIRE(r.triple);
  const TripleTable& t = *r.triple;
  CHECK(t.answer.at({T("*"), T("0")}) == T("0"));
  CHECK(t.answer.at({T("*"), T("1")}) == T("1"));
  CHECK(t.secret.at({T("*"), T("{2}")}) == T("{0}"));
  CHECK(validate_triple(error(1, 3), error(1, 2), t.triple()).valid);
}

TEST_CASE("no depth-3 witness for error(1,2) from error(1,3)") {
  const auto r = solve_lt(error(1, 2), error(1, 3), 3);
  CHECK_FALSE(r.found());
  CHECK(r.certificate.mode == SearchCertificate::Mode::kExhausted);
  CHECK_FALSE(solve_one_query(error(1, 2), error(1, 3)).triple.has_value());
}

TEST_CASE("found witnesses verify") {
  for (auto [f, g, d] : {std::tuple{error(1, 3), error(1, 2), 1},
                         std::tuple{error(1, 2), error(1, 2), 1},
                         std::tuple{error(1, 4), error(1, 2), 1},
                         std::tuple{error(1, 4), error(1, 3), 2}}) {
    const auto r = solve_lt(f, g, d);
    REQUIRE(r.found());
    CHECK(verify_winning(f, g, r.witness()).winning);
  }
}

TEST_CASE("depth-1 search agrees with a brute-force oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 150; ++i) {
    const BilayerFn f = testing::random_fn(rng, "f", 2, 2, 2, false);
    const BilayerFn g = testing::random_fn(rng, "g", 2, 2, 2, true);
    const bool expect = one_query_exists(f, g);
    const auto oq = solve_one_query(f, g);
    CHECK(oq.triple.has_value() == expect);
    if (oq.triple) CHECK(validate_triple(f, g, oq.triple->triple()).valid);
    const auto lt = solve_lt(f, g, 1);
    CHECK(lt.found() == expect);
    if (lt.found()) CHECK(verify_winning(f, g, lt.witness()).winning);
  }
}

TEST_CASE("a tiny budget reports budget exhaustion") {
  const auto r = solve_lt(error(1, 2), error(1, 3), 3, 5);
  CHECK_FALSE(r.found());
  CHECK(r.certificate.mode == SearchCertificate::Mode::kBudget);
}

TEST_CASE("refinement of multifunctions") {
  Multifunction g{{T("0"), {T("0"), T("1")}}, {T("1"), {T("1")}}};
  Multifunction h{{T("0"), {T("1")}}, {T("1"), {T("1")}}, {T("2"), {T("0")}}};
  CHECK(refines(h, g));
  CHECK_FALSE(refines(g, h));
  Multifunction partial{{T("0"), {T("0")}}};
  CHECK_FALSE(refines(partial, g));
}

TEST_CASE("poset of errors at depth 2") {
  const auto report = poset({id_fn(1).renamed("id"), error(1, 4).renamed("e14"),
                             error(1, 3).renamed("e13"), error(1, 2).renamed("e12")},
                            2);
  CHECK_FALSE(report.inconclusive());
  CHECK(report.reflexivity_failures.empty());
  CHECK(report.transitivity_failures.empty());
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(report.cells[i][j].reducible() == (i <= j));
    }
  }
  CHECK(report.dot() ==
        "digraph {\n  \"id\";\n  \"e14\";\n  \"e13\";\n  \"e12\";\n"
        "  \"e14\" -> \"id\";\n  \"e13\" -> \"e14\";\n  \"e12\" -> \"e13\";\n}\n");
  CHECK_THROWS_AS(poset({error(1, 2), error(1, 2)}, 1), Error);
}
