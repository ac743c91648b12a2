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

#include <chrono>
#include <iostream>

#include "ltw/catalog/error_theorem.hpp"
#include "ltw/catalog/density.hpp"
#include "ltw/catalog/llpo.hpp"
#include "ltw/catalog/prob_error.hpp"
#include "ltw/engine.hpp"
#include "ltw/reduction.hpp"
#include "ltw/solver.hpp"

using namespace ltw;

namespace {

Term T(const char* s) { return Term::parse(s); }

}  // namespace

TEST_CASE("llpo cells") {
  const BilayerFn f = llpo(1, 2, 4);
  CHECK(*f.cell(ClockedTable::parse("stages: [3, never]").term(), T("*")) == ValueSet{T("1")});
  CHECK(*f.cell(ClockedTable::parse("stages: [never, never]").term(), T("*")) ==
        ValueSet{T("0"), T("1")});
  CHECK(f.cell(ClockedTable::parse("stages: [1, 2]").term(), T("*")) == nullptr);
  CHECK(f.publics().size() == 9);
  CHECK(ClockedTable::parse("stages: [3, never]").str() == "stages: [3, never]");
}

TEST_CASE("llpo reduction by hand") {
  const ReductionTriple t = llpo_reduction(1, 2, 4);
  const Term e = ClockedTable::parse("stages: [3, never]").term();
  CHECK(*t.secret(e, T("*")) == T("{0}"));
  CHECK(*t.answer(e, T("1")) == T("1"));
  CHECK(*t.answer(e, T("2")) == T("1"));
  const Term never = ClockedTable::parse("stages: [never, never]").term();
  CHECK(*t.secret(never, T("*")) == T("{2}"));
  CHECK(*t.answer(never, T("0")) == T("0"));
}

TEST_CASE("llpo reduction validates on every small table") {
  for (std::uint64_t k = 2; k <= 3; ++k) {
    for (std::uint64_t m = 1; m < k && m <= 2; ++m) {
      const auto v = validate_triple(llpo(m, k, 4), error(m, k + 1), llpo_reduction(m, k, 4));
      CHECK_MESSAGE(v.valid, "m=" << m << " k=" << k);
    }
  }
}

TEST_CASE("race program") {
  CHECK(psi_values(ClockedTable::parse("stages: [2, 2]").term()) == ValueSet{T("1")});
  CHECK(psi_values(ClockedTable::parse("stages: [never, 5]").term()) == ValueSet{T("0")});
  CHECK(psi_values(ClockedTable::parse("stages: [never, never]").term()) ==
        ValueSet{T("0"), T("1")});
  for (const auto& t : clocked_tables(2, 4, 2)) CHECK(psi_halting(t).size() <= 1);
  const BilayerFn race = psi_fn(4);
  CHECK(race.publics().size() == 25);
}

TEST_CASE("easy direction") {
  CHECK(validate_triple(error(1, 2), error(2, 4), easy_direction(2, 4, 2)).valid);
  CHECK(validate_triple(error(1, 3), error(1, 2), easy_direction(1, 2, 3)).valid);
  CHECK(validate_triple(error(1, 3), error(2, 5), easy_direction(2, 5, 3)).valid);
  CHECK_THROWS_AS(easy_direction(2, 4, 1), Error);
  CHECK(*easy_direction(2, 4, 2).secret(T("*"), T("{1}")) == T("{2,3}"));
}

TEST_CASE("consolidation") {
  const Witness w = consolidation_strategy(2, 4, 0);
  CHECK(w.depth == 7);
  CHECK(verify_winning(error_hard(2, 4, 0), consolidation_target(2, 4, 0), w).winning);
  for (auto [m, k, n] : {std::tuple{1, 3, 0}, std::tuple{1, 3, 1}, std::tuple{1, 4, 2},
                         std::tuple{2, 5, 1}, std::tuple{2, 4, 1}, std::tuple{3, 5, 0}}) {
    const Verdict v = verify_winning(error_hard(m, k, n), consolidation_target(m, k, n),
                                     consolidation_strategy(m, k, n));
    CHECK_MESSAGE(v.winning, "(" << m << "," << k << "," << n << ")");
  }
}

TEST_CASE("collapse chain") {
  for (auto [m, k] : {std::pair{1, 3}, std::pair{2, 4}, std::pair{2, 3}, std::pair{2, 5}, std::pair{3, 5}, std::pair{2, 6}, std::pair{3, 6}}) {
    const auto start = std::chrono::steady_clock::now();
    const Witness w = collapse_chain(m, k);
    const Verdict v = verify_winning(error(m, k), error(1, ceil_div(k, m)), w);
    CHECK_MESSAGE(v.winning, "(" << m << "," << k << ")");
    MESSAGE("collapse_chain(" << m << "," << k << ") depth " << w.depth << " plays " << v.plays
            << " in "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
            << "s");
  }
}

TEST_CASE("prob_error cells") {
  const BilayerFn f = prob_error(1, 1, 2, 3);
  const Term only_zero = Term::machine({{1, 1, 1}, {kNever, kNever, kNever}});
  const auto* cell = f.cell(only_zero, T("{0}"));
  REQUIRE(cell);
  CHECK(*cell == ValueSet{T("1")});
  CHECK(f.row(only_zero).size() == 1);
  const Term constant = Term::machine({{0, 0, 0}, {kNever, 0, 0}});
  for (const auto& [secret, values] : f.row(constant)) CHECK(values == ValueSet{T("0")});
  CHECK(f.contains(constant, T("{0,1}")));
  const Term pending = Term::machine({{0, 0, 0}, {kNever, kNever, kNever}});
  CHECK_FALSE(f.contains(pending, T("{0,1}")));
  CHECK(staged_machines(1, 2, 3).size() == 49);
}

TEST_CASE("prob_error stage bookkeeping") {
  const Term distinct = Term::machine({{0, 0, 0}, {1, 1, 1}});
  const StageBlocks sb = stage_blocks(distinct, 2, 1);
  CHECK(sb.scale == 1);
  REQUIRE(sb.blocks.size() == 2);
  CHECK(stage_secret(distinct, T("{0}"), 1, 2, 1) == std::vector<std::uint64_t>{1});
  CHECK(stage_scales(2, 2) == std::set<std::uint64_t>{1, 2});
}

TEST_CASE("prob_error strategies") {
  for (int bits : {1, 2}) {
    const auto start = std::chrono::steady_clock::now();
    const BilayerFn f = prob_error(bits, 1, 2, 3);
    CHECK(verify_winning(f, stage_target(bits, 1, 2), stage_strategy(bits, 1, 2, 3)).winning);
    const Verdict v = verify_winning(f, error(1, 2), prob_error_strategy(bits, 1, 2, 3));
    CHECK(v.winning);
    CHECK(validate_triple(error(1, 2), f, error_to_prob_error(bits, 1, 2, 3)).valid);
    MESSAGE("prob_error T=" << bits << " plays " << v.plays << " in "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
            << "s");
  }
}

TEST_CASE("a stage strategy cut short loses") {
  const Verdict v =
      verify_winning(prob_error(1, 1, 2, 3), stage_target(1, 1, 2), stage_strategy(1, 1, 2, 1));
  CHECK_FALSE(v.winning);
}

TEST_CASE("lower density") {
  CHECK(lower_density(Term::periodic("", "01")) == Rational{1, 2});
  CHECK(lower_density(Term::periodic("0110", "1")) == Rational{1, 1});
  CHECK(lower_density(Term::periodic("0000", "1")) == Rational{1, 1});
  CHECK(lower_density(Term::periodic("", "0110")) == Rational{1, 2});
  CHECK(Rational::of(0, 5) == Rational{0, 1});
  CHECK(members_below(Term::periodic("1", "01"), 6) == std::vector<std::uint64_t>{0, 2, 4});
}

TEST_CASE("density error reduction") {
  const ReductionTriple t = denerror_reduction(2);
  const Term gap0 = *t.secret(T("*"), T("{0}"));
  CHECK(gap0 == Term::periodic("", "01"));
  for (auto y : members_below(gap0, 2 * kDensityWindow)) CHECK(*t.answer(T("*"), Term::nat(y)) == T("1"));
  for (std::uint64_t l = 2; l <= 4; ++l) {
    CHECK(validate_triple(error(1, l), denerror(l), denerror_reduction(l)).valid);
    const ReductionTriple r = denerror_reduction(l);
    for (std::uint64_t j = 0; j < l; ++j) {
      const Term gap = *r.secret(T("*"), Term::set({j}));
      CHECK(lower_density(gap) == Rational::of(l - 1, l));
      std::set<std::uint64_t> residues;
      for (auto y : members_below(gap, kDensityWindow * l)) residues.insert(y % l);
      CHECK(residues.size() == l - 1);
      CHECK_FALSE(residues.count(j));
    }
  }
}

TEST_CASE("race and llpo(1,2) are one-query equivalent") {
  const BilayerFn race = psi_fn(4);
  const BilayerFn choice = llpo(1, 2, 4);
  const auto there = solve_one_query(race, choice);
  const auto back = solve_one_query(choice, race);
  REQUIRE(there.triple);
  REQUIRE(back.triple);
  CHECK(validate_triple(race, choice, there.triple->triple()).valid);
  CHECK(validate_triple(choice, race, back.triple->triple()).valid);
}
