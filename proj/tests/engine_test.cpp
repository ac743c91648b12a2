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

#include "ltw/engine.hpp"
#include "ltw/solver.hpp"
#include "support.hpp"

using namespace ltw;

namespace {

Term T(const char* s) { return Term::parse(s); }

Witness query_then(std::function<Term(const Term&)> finish) {
  Witness w;
  w.arthur = arthur_from_fn(
      [finish](const Term&, const Terms& answers) -> std::optional<ArthurMove> {
        if (answers.empty()) return ArthurMove::query(Term::unit());
        return ArthurMove::terminate(finish(answers.front()));
      });
  w.nimue = nimue_from_fn([](const Term&, const Term& c0, const Terms&,
                             const Term&) -> std::optional<Term> { return c0; });
  return w;
}

}  // namespace

TEST_CASE("copying the secret wins G(error(1,2), error(1,2))") {
  const BilayerFn e = error(1, 2);
  const Witness w = copy_witness();
  for (const char* c : {"{0}", "{1}"}) {
    ScriptedMerlin merlin(e, T("*"), T(c), {});
    const Transcript t = play(e, e, *w.arthur, *w.nimue, merlin, 1);
    CHECK(t.outcome.kind == Outcome::Kind::kArthurNimueWin);
  }
  CHECK(verify_winning(e, e, w).winning);
}

TEST_CASE("transcript lines") {
  const BilayerFn e = error(1, 2);
  const Witness w = copy_witness();
  ScriptedMerlin merlin(e, T("*"), T("{0}"), {});
  const Transcript t = play(e, e, *w.arthur, *w.nimue, merlin, 1);
  CHECK(t.str() ==
        "depth 1\n"
        "round 0 merlin * | {0}\n"
        "round 1 arthur query *\n"
        "round 1 nimue {0}\n"
        "round 1 merlin 1\n"
        "round 2 arthur terminate 1\n"
        "outcome arthur-nimue-win 1\n");
}

TEST_CASE("rule violations and depth") {
  const BilayerFn e = error(1, 2);
  const Witness w = copy_witness();
  ScriptedMerlin outside(e, T("*"), T("{5}"), {});
  const Outcome o = play(e, e, *w.arthur, *w.nimue, outside, 1).outcome;
  CHECK(o.kind == Outcome::Kind::kRuleViolation);
  CHECK(o.player == Player::kMerlin);
  CHECK(o.round == 0);
  CHECK(o.arthur_nimue_win());

  ScriptedMerlin wrong(e, T("*"), T("{0}"), {T("0")});
  const Outcome o2 = play(e, e, *w.arthur, *w.nimue, wrong, 1).outcome;
  CHECK(o2.player == Player::kMerlin);
  CHECK(o2.round == 1);

  auto forever = arthur_from_fn([](const Term&, const Terms&) -> std::optional<ArthurMove> {
    return ArthurMove::query(Term::unit());
  });
  ScriptedMerlin m(e, T("*"), T("{0}"), {});
  CHECK(play(e, e, *forever, *w.nimue, m, 3).outcome.kind ==
        Outcome::Kind::kDepthExhausted);
  const Verdict v = verify_winning(e, e, *forever, *w.nimue, 3);
  CHECK_FALSE(v.winning);
  REQUIRE(v.counter_play);
  CHECK(v.counter_play->outcome.kind == Outcome::Kind::kDepthExhausted);
}

TEST_CASE("an empty cell leaves Merlin without a legal answer") {
  Multifunction f{{T("0"), {T("0")}}};
  const BilayerFn target = hat(f, "target");
  CellTable cells;
  cells[T("*")][T("0")] = {};
  cells[T("*")][T("1")] = {T("1")};
  const BilayerFn g("g", cells, {T("1")});
  Witness w;
  w.arthur = arthur_from_fn([](const Term&, const Terms& answers) -> std::optional<ArthurMove> {
    if (answers.empty()) return ArthurMove::query(Term::unit());
    return ArthurMove::terminate(Term::nat(1));
  });
  w.nimue = nimue_from_fn([](const Term&, const Term&, const Terms&, const Term&) {
    return std::optional<Term>(Term::nat(0));
  });
  ScriptedMerlin m(g, T("0"), T("*"), {});
  const Outcome o = play(target, g, *w.arthur, *w.nimue, m, 1).outcome;
  CHECK(o.kind == Outcome::Kind::kRuleViolation);
  CHECK(o.player == Player::kMerlin);
  CHECK(verify_winning(target, g, w).winning);
}

TEST_CASE("min(answer,1) loses G(error(1,2), error(1,3))") {
  const BilayerFn f = error(1, 2);
  const BilayerFn g = error(1, 3);
  const Witness w = query_then([](const Term& m) {
    return Term::nat(std::min<std::uint64_t>(m.as_nat(), 1));
  });
  // Every Nimue fails: try each constant secret.
  for (const char* z : {"{0}", "{1}", "{2}"}) {
    auto nimue = nimue_from_fn([z](const Term&, const Term&, const Terms&, const Term&) {
      return std::optional<Term>(Term::parse(z));
    });
    const Verdict v = verify_winning(f, g, *w.arthur, *nimue, 1);
    CHECK_FALSE(v.winning);
    REQUIRE(v.counter_play);
    CHECK(replay(f, g, *v.counter_play) == v.counter_play->outcome);
  }
}

TEST_CASE("illegal Nimue secrets are charged to Nimue") {
  const BilayerFn e = error(1, 3);
  const Witness w = copy_witness();
  auto bad = nimue_from_fn([](const Term&, const Term&, const Terms&, const Term&) {
    return std::optional<Term>(Term::parse("{0,1}"));
  });
  const Verdict v = verify_winning(e, e, *w.arthur, *bad, 1);
  CHECK_FALSE(v.winning);
  CHECK(v.counter_play->outcome.player == Player::kNimue);
}

TEST_CASE("copy wins on error(1,3) and its verdict is schedule independent") {
  const BilayerFn e = error(1, 3);
  const Witness w = copy_witness();
  const Verdict a = verify_winning(e, e, w, {true, 1});
  const Verdict b = verify_winning(e, e, w, {false, 4});
  CHECK(a.winning);
  CHECK(b.winning);
  CHECK(b.plays == 6);
}

TEST_CASE("transcripts parse back and replay to the same outcome") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const BilayerFn f = testing::random_fn(rng, "f", 2, 2, 3, false);
    const BilayerFn g = testing::random_fn(rng, "g", 2, 3, 3, true);
    auto arthur = testing::hashed_arthur(rng(), f, g);
    auto nimue = testing::hashed_nimue(rng(), g);
    auto [x0, c0] = testing::random_input(rng, f);
    testing::RandomMerlin merlin(g, x0, c0, rng(), true);
    const Transcript t = play(f, g, *arthur, *nimue, merlin, 3);
    const Transcript back = Transcript::parse(t.str());
    CHECK(back.entries.size() == t.entries.size());
    CHECK(back.outcome == t.outcome);
    CHECK(back.str() == t.str());
    CHECK(replay(f, g, back) == t.outcome);
  }
}
