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

#include "ltw/reduction.hpp"

namespace ltw {

std::string format_pair(const Term& a, const Term& b, const char* sep) {
  std::string out;
  a.write(out);
  out += sep;
  b.write(out);
  return out;
}

ReductionTriple TripleTable::triple(std::string label) const {
  auto self = std::make_shared<TripleTable>(*this);
  ReductionTriple t;
  t.label = std::move(label);
  t.query = [self](const Term& n) -> std::optional<Term> {
    auto it = self->query.find(n);
    if (it == self->query.end()) return std::nullopt;
    return it->second;
  };
  t.answer = [self](const Term& n, const Term& m) -> std::optional<Term> {
    auto it = self->answer.find({n, m});
    if (it == self->answer.end()) return std::nullopt;
    return it->second;
  };
  t.secret = [self](const Term& n, const Term& c) -> std::optional<Term> {
    auto it = self->secret.find({n, c});
    if (it == self->secret.end()) return std::nullopt;
    return it->second;
  };
  return t;
}

std::string TripleTable::str() const {
  std::string out;
  for (const auto& [n, u] : query) {
    out += "query " + format_pair(n, u, " -> ") + "\n";
  }
  for (const auto& [key, v] : answer) {
    out += "answer " + format_pair(key.first, key.second, " ") + " -> " +
           v.str() + "\n";
  }
  for (const auto& [key, z] : secret) {
    out += "secret " + format_pair(key.first, key.second, " | ") + " -> " +
           z.str() + "\n";
  }
  return out;
}

TripleCheck validate_triple(const BilayerFn& f, const BilayerFn& g,
                            const ReductionTriple& t) {
  TripleCheck check;
  auto fail = [&](std::string why) {
    check.valid = false;
    check.failure = std::move(why);
    return check;
  };
  for (const auto& [n, row] : f.cells()) {
    const auto u = t.query(n);
    if (!u) return fail("no query for " + n.str());
    for (const auto& [c, target] : row) {
      ++check.cells;
      const std::string at = format_cell(n, c, target);
      const auto z = t.secret(n, c);
      if (!z) return fail("no secret at " + at);
      const ValueSet* cell = g.cell(*u, *z);
      if (!cell) {
        return fail("(" + format_pair(*u, *z, " | ") + ") outside dom " +
                    g.name() + " at " + at);
      }
      for (const auto& m : *cell) {
        const auto v = t.answer(n, m);
        if (!v) return fail("no answer map for " + format_pair(n, m, " ") + " at " + at);
        if (!target.count(*v)) {
          return fail("answer " + m.str() + " maps to " + v->str() + " at " + at);
        }
      }
    }
  }
  return check;
}

Witness lift(const ReductionTriple& t) {
  Witness w;
  auto query = t.query;
  auto answer = t.answer;
  auto secret = t.secret;
  w.arthur = arthur_from_fn(
      [query, answer](const Term& x0, const Terms& answers) -> std::optional<ArthurMove> {
        if (answers.empty()) {
          auto u = query(x0);
          if (!u) return std::nullopt;
          return ArthurMove::query(*u);
        }
        auto v = answer(x0, answers.front());
        if (!v) return std::nullopt;
        return ArthurMove::terminate(*v);
      });
  w.nimue = nimue_from_fn([secret](const Term& x0, const Term& c0, const Terms&,
                                   const Term&) { return secret(x0, c0); });
  w.depth = 1;
  w.label = "lift(" + t.label + ")";
  return w;
}

}  // namespace ltw
