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

#include "ltw/closure.hpp"

#include <map>

namespace ltw {
namespace {

using ArthurRows = ArthurTable::Rows;
using NimueRows = NimueTable::Rows;

std::vector<ArthurRows> arthur_tables(const BilayerFn& h, const Terms& history,
                                      int depth, const ValueSet& values,
                                      std::uint64_t& count, std::uint64_t budget) {
  std::vector<ArthurRows> out;
  for (const auto& v : values) {
    out.push_back({{history, ArthurMove::terminate(v)}});
  }
  if (depth == 0) return out;
  for (const auto& u : h.publics()) {
    std::vector<ArthurRows> partial{{{history, ArthurMove::query(u)}}};
    for (const auto& m : h.answers(u)) {
      Terms next = history;
      next.push_back(m);
      const auto subs = arthur_tables(h, next, depth - 1, values, count, budget);
      std::vector<ArthurRows> grown;
      for (const auto& base : partial) {
        for (const auto& sub : subs) {
          if (++count > budget) throw Error("closure enumeration exceeded the budget");
          ArthurRows rows = base;
          rows.insert(sub.begin(), sub.end());
          grown.push_back(std::move(rows));
        }
      }
      partial = std::move(grown);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

bool run_restricted(const BilayerFn& h, int depth, const ArthurRows& arthur,
                    const NimueRows& nimue, Terms& history, int used,
                    ValueSet& values) {
  auto a = arthur.find(history);
  if (a == arthur.end()) return false;
  if (!a->second.is_query()) {
    values.insert(a->second.arg);
    return true;
  }
  if (used == depth) return false;
  const Term& u = a->second.arg;
  auto n = nimue.find(history);
  if (n == nimue.end()) return false;
  const ValueSet* cell = h.cell(u, n->second);
  if (!cell) return false;
  for (const auto& m : *cell) {
    history.push_back(m);
    const bool ok = run_restricted(h, depth, arthur, nimue, history, used + 1, values);
    history.pop_back();
    if (!ok) return false;
  }
  return true;
}

std::optional<ValueSet> evaluate_rows(const BilayerFn& h, int depth,
                                      const ArthurRows& arthur, const NimueRows& nimue) {
  Terms history;
  ValueSet values;
  if (!run_restricted(h, depth, arthur, nimue, history, 0, values)) return std::nullopt;
  return values;
}

class ClosureArthurSession : public ArthurSession {
 public:
  ClosureArthurSession(Term x0, std::shared_ptr<const ArthurTable> table,
                       const ReductionTriple* triple)
      : x0_(std::move(x0)), table_(std::move(table)), triple_(triple) {}

  std::optional<ArthurMove> move() override {
    auto it = table_->rows().find(history_);
    if (it == table_->rows().end()) return std::nullopt;
    if (it->second.is_query()) return it->second;
    auto v = triple_->answer(x0_, it->second.arg);
    if (!v) return std::nullopt;
    return ArthurMove::terminate(*v);
  }
  void observe(const Term& answer) override { history_.push_back(answer); }
  std::unique_ptr<ArthurSession> clone() const override {
    return std::make_unique<ClosureArthurSession>(*this);
  }
  void state_key(std::string& out) const override {
    x0_.write(out);
    out += format_history(history_);
  }

 private:
  Term x0_;
  std::shared_ptr<const ArthurTable> table_;
  const ReductionTriple* triple_;
  Terms history_;
};

class ClosureArthur : public ArthurStrategy {
 public:
  ClosureArthur(std::map<Term, std::shared_ptr<const ArthurTable>> tables,
                ReductionTriple triple)
      : tables_(std::move(tables)), triple_(std::move(triple)) {}
  std::unique_ptr<ArthurSession> start(const Term& x0) const override {
    auto it = tables_.find(x0);
    auto table = it == tables_.end()
                     ? std::make_shared<const ArthurTable>(ArthurRows{}, false)
                     : it->second;
    return std::make_unique<ClosureArthurSession>(x0, std::move(table), &triple_);
  }

 private:
  std::map<Term, std::shared_ptr<const ArthurTable>> tables_;
  ReductionTriple triple_;
};

class ClosureNimue : public NimueStrategy {
 public:
  explicit ClosureNimue(std::map<std::pair<Term, Term>, std::shared_ptr<const NimueTable>> tables)
      : tables_(std::move(tables)) {}
  std::unique_ptr<NimueSession> start(const Term& x0, const Term& c0) const override {
    auto it = tables_.find({x0, c0});
    if (it == tables_.end()) {
      static const NimueTable kEmpty(NimueRows{}, false);
      return kEmpty.start(x0, c0);
    }
    return it->second->start(x0, c0);
  }

 private:
  std::map<std::pair<Term, Term>, std::shared_ptr<const NimueTable>> tables_;
};

}  // namespace

ClosureFn::ClosureFn(const BilayerFn& h, int depth, ValueSet values,
                     std::uint64_t budget)
    : depth_(depth) {
  if (depth < 0) throw Error("closure depth must be non-negative");
  if (values.empty()) throw Error("closure needs a nonempty value alphabet");
  std::uint64_t count = 0;
  CellTable cells;
  for (const auto& arthur : arthur_tables(h, {}, depth, values, count, budget)) {
    // Nimue picks a legal secret at every query node.
    std::vector<std::pair<Terms, std::vector<Term>>> nodes;
    for (const auto& [history, mv] : arthur) {
      if (!mv.is_query()) continue;
      std::vector<Term> secrets;
      for (const auto& entry : h.row(mv.arg)) secrets.push_back(entry.first);
      nodes.emplace_back(history, std::move(secrets));
    }
    std::vector<std::size_t> pick(nodes.size(), 0);
    SecretRow row;
    while (true) {
      if (++count > budget) throw Error("closure enumeration exceeded the budget");
      NimueRows nimue;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        nimue.emplace(nodes[i].first, nodes[i].second[pick[i]]);
      }
      if (auto v = evaluate_rows(h, depth, arthur, nimue)) {
        row.emplace(NimueTable(nimue, false).code(), std::move(*v));
      }
      std::size_t k = nodes.size();
      while (k > 0 && ++pick[k - 1] == nodes[k - 1].second.size()) pick[--k] = 0;
      if (k == 0) break;
    }
    if (!row.empty()) cells.emplace(ArthurTable(arthur, false).code(), std::move(row));
  }
  fn_ = BilayerFn("closure(" + h.name() + "," + std::to_string(depth) + ")",
                  std::move(cells), std::move(values));
}

std::optional<ValueSet> ClosureFn::evaluate(const BilayerFn& h, int depth,
                                            const Term& arthur_code,
                                            const Term& nimue_code) {
  const auto arthur = ArthurTable::from_code(arthur_code, false);
  const auto nimue = NimueTable::from_code(nimue_code, false);
  return evaluate_rows(h, depth, arthur->rows(), nimue->rows());
}

TripleTable oq_from_lt(const BilayerFn& g, const BilayerFn& h, const Witness& w,
                       int depth, const ValueSet& values) {
  if (values.empty()) throw Error("oq_from_lt needs a nonempty value alphabet");
  const Term filler = *values.begin();
  TripleTable out;
  for (const auto& [n, row] : g.cells()) {
    ArthurRows arthur;
    // Per secret: the Nimue rows where that secret is still possible.
    std::map<Term, NimueRows> nimue;
    std::map<Terms, Term> query_at;

    struct Live {
      Term secret;
      std::unique_ptr<NimueSession> session;
    };
    std::function<void(Terms&, ArthurSession&, std::vector<Live>&, int)> walk =
        [&](Terms& history, ArthurSession& a, std::vector<Live>& live, int used) {
          const auto mv = a.move();
          if (!mv) throw Error("oq_from_lt: Arthur has no move at " + format_history(history));
          if (!mv->is_query()) {
            if (!values.count(mv->arg)) {
              throw Error("oq_from_lt: value " + mv->arg.str() + " outside the alphabet");
            }
            arthur.emplace(history, *mv);
            return;
          }
          if (used == depth) throw Error("oq_from_lt: witness exceeds the depth");
          const Term& u = mv->arg;
          arthur.emplace(history, *mv);
          query_at.emplace(history, u);
          std::vector<std::pair<Term, ValueSet>> cells;
          for (auto& l : live) {
            auto z = l.session->advise(u);
            if (!z || !h.contains(u, *z)) {
              throw Error("oq_from_lt: Nimue breaks a rule at " + format_history(history));
            }
            nimue[l.secret].emplace(history, *z);
            cells.emplace_back(*z, *h.cell(u, *z));
          }
          for (const auto& m : h.answers(u)) {
            std::vector<Live> next;
            for (std::size_t i = 0; i < live.size(); ++i) {
              if (!cells[i].second.count(m)) continue;
              auto s = live[i].session->clone();
              s->observe(m);
              next.push_back({live[i].secret, std::move(s)});
            }
            history.push_back(m);
            if (next.empty()) {
              arthur.emplace(history, ArthurMove::terminate(filler));
            } else {
              auto child = a.clone();
              child->observe(m);
              walk(history, *child, next, used + 1);
            }
            history.pop_back();
          }
        };

    std::vector<Live> live;
    for (const auto& entry : row) {
      live.push_back({entry.first, w.nimue->start(n, entry.first)});
    }
    Terms history;
    auto a = w.arthur->start(n);
    walk(history, *a, live, 0);

    out.query.emplace(n, ArthurTable(arthur, false).code());
    for (const auto& v : values) out.answer.emplace(std::make_pair(n, v), v);
    for (const auto& entry : row) {
      NimueRows rows = nimue[entry.first];
      for (const auto& [history, u] : query_at) {
        if (!rows.count(history)) rows.emplace(history, h.row(u).begin()->first);
      }
      out.secret.emplace(std::make_pair(n, entry.first), NimueTable(rows, false).code());
    }
  }
  return out;
}

Witness lt_from_oq(const BilayerFn& g, const ReductionTriple& t, int depth) {
  std::map<Term, std::shared_ptr<const ArthurTable>> arthurs;
  std::map<std::pair<Term, Term>, std::shared_ptr<const NimueTable>> nimues;
  for (const auto& [n, row] : g.cells()) {
    auto code = t.query(n);
    if (!code) throw Error("lt_from_oq: no query for " + n.str());
    arthurs.emplace(n, ArthurTable::from_code(*code, false));
    for (const auto& entry : row) {
      auto secret = t.secret(n, entry.first);
      if (!secret) throw Error("lt_from_oq: no secret for " + entry.first.str());
      nimues.emplace(std::make_pair(n, entry.first), NimueTable::from_code(*secret, false));
    }
  }
  Witness w;
  w.arthur = std::make_shared<ClosureArthur>(std::move(arthurs), t);
  w.nimue = std::make_shared<ClosureNimue>(std::move(nimues));
  w.depth = depth;
  w.label = "lt_from_oq(" + t.label + ")";
  return w;
}

TripleCheck validate_triple_lazy(const BilayerFn& g, const BilayerFn& h, int depth,
                                 const ReductionTriple& t) {
  TripleCheck check;
  for (const auto& [n, row] : g.cells()) {
    const auto code = t.query(n);
    for (const auto& [c, target] : row) {
      ++check.cells;
      const std::string at = format_cell(n, c, target);
      const auto secret = t.secret(n, c);
      if (!code || !secret) {
        check.valid = false;
        check.failure = "missing query or secret at " + at;
        return check;
      }
      const auto values = ClosureFn::evaluate(h, depth, *code, *secret);
      if (!values) {
        check.valid = false;
        check.failure = "pair outside the closure domain at " + at;
        return check;
      }
      for (const auto& m : *values) {
        const auto v = t.answer(n, m);
        if (!v || !target.count(*v)) {
          check.valid = false;
          check.failure = "value " + m.str() + " escapes at " + at;
          return check;
        }
      }
    }
  }
  return check;
}

}  // namespace ltw
