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

#include "ltw/combinators.hpp"

#include <functional>

namespace ltw {
namespace {

class DeadArthur : public ArthurSession {
 public:
  std::optional<ArthurMove> move() override { return std::nullopt; }
  void observe(const Term&) override {}
  std::unique_ptr<ArthurSession> clone() const override {
    return std::make_unique<DeadArthur>();
  }
  void state_key(std::string& out) const override { out += "dead"; }
};

class DeadNimue : public NimueSession {
 public:
  std::optional<Term> advise(const Term&) override { return std::nullopt; }
  void observe(const Term&) override {}
  std::unique_ptr<NimueSession> clone() const override {
    return std::make_unique<DeadNimue>();
  }
  void state_key(std::string& out) const override { out += "dead"; }
};

// Tags a routed session's state key with the input that selected the route.
class TaggedArthur : public ArthurSession {
 public:
  TaggedArthur(std::string tag, std::unique_ptr<ArthurSession> session)
      : tag_(std::move(tag)), session_(std::move(session)) {}
  std::optional<ArthurMove> move() override { return session_->move(); }
  void observe(const Term& answer) override { session_->observe(answer); }
  std::unique_ptr<ArthurSession> clone() const override {
    return std::make_unique<TaggedArthur>(tag_, session_->clone());
  }
  void state_key(std::string& out) const override {
    out += tag_;
    out += ':';
    session_->state_key(out);
  }

 private:
  std::string tag_;
  std::unique_ptr<ArthurSession> session_;
};

class TaggedNimue : public NimueSession {
 public:
  TaggedNimue(std::string tag, std::unique_ptr<NimueSession> session)
      : tag_(std::move(tag)), session_(std::move(session)) {}
  std::optional<Term> advise(const Term& query) override {
    return session_->advise(query);
  }
  void observe(const Term& answer) override { session_->observe(answer); }
  std::unique_ptr<NimueSession> clone() const override {
    return std::make_unique<TaggedNimue>(tag_, session_->clone());
  }
  void state_key(std::string& out) const override {
    out += tag_;
    out += ':';
    session_->state_key(out);
  }

 private:
  std::string tag_;
  std::unique_ptr<NimueSession> session_;
};

class ComposedArthurSession : public ArthurSession {
 public:
  ComposedArthurSession(const ArthurStrategy* inner_strategy,
                        std::unique_ptr<ArthurSession> outer)
      : inner_strategy_(inner_strategy), outer_(std::move(outer)) {}

  ComposedArthurSession(const ComposedArthurSession& other)
      : inner_strategy_(other.inner_strategy_),
        outer_(other.outer_->clone()),
        inner_(other.inner_ ? other.inner_->clone() : nullptr) {}

  std::optional<ArthurMove> move() override {
    while (true) {
      if (inner_) {
        auto mv = inner_->move();
        if (!mv || mv->is_query()) return mv;
        outer_->observe(mv->arg);
        inner_.reset();
      }
      auto mv = outer_->move();
      if (!mv || !mv->is_query()) return mv;
      inner_ = inner_strategy_->start(mv->arg);
    }
  }

  void observe(const Term& answer) override {
    if (inner_) inner_->observe(answer);
  }

  std::unique_ptr<ArthurSession> clone() const override {
    return std::make_unique<ComposedArthurSession>(*this);
  }

  void state_key(std::string& out) const override {
    out += "C(";
    outer_->state_key(out);
    out += ';';
    if (inner_) {
      inner_->state_key(out);
    } else {
      out += '-';
    }
    out += ')';
  }

 private:
  const ArthurStrategy* inner_strategy_;
  std::unique_ptr<ArthurSession> outer_;
  std::unique_ptr<ArthurSession> inner_;
};

// Nimue replays both Arthurs herself, which she can since she sees every
// move, and answers each inner query with the inner Nimue.
class ComposedNimueSession : public NimueSession {
 public:
  ComposedNimueSession(const ArthurStrategy* inner_arthur_strategy,
                       const NimueStrategy* inner_nimue_strategy,
                       std::unique_ptr<ArthurSession> outer_arthur,
                       std::unique_ptr<NimueSession> outer_nimue)
      : inner_arthur_strategy_(inner_arthur_strategy),
        inner_nimue_strategy_(inner_nimue_strategy),
        outer_arthur_(std::move(outer_arthur)),
        outer_nimue_(std::move(outer_nimue)) {}

  ComposedNimueSession(const ComposedNimueSession& other)
      : inner_arthur_strategy_(other.inner_arthur_strategy_),
        inner_nimue_strategy_(other.inner_nimue_strategy_),
        outer_arthur_(other.outer_arthur_->clone()),
        outer_nimue_(other.outer_nimue_->clone()),
        inner_arthur_(other.inner_arthur_ ? other.inner_arthur_->clone() : nullptr),
        inner_nimue_(other.inner_nimue_ ? other.inner_nimue_->clone() : nullptr) {}

  std::optional<Term> advise(const Term&) override {
    while (true) {
      if (inner_arthur_) {
        auto mv = inner_arthur_->move();
        if (!mv) return std::nullopt;
        if (mv->is_query()) return inner_nimue_->advise(mv->arg);
        outer_arthur_->observe(mv->arg);
        outer_nimue_->observe(mv->arg);
        inner_arthur_.reset();
        inner_nimue_.reset();
      }
      auto mv = outer_arthur_->move();
      if (!mv || !mv->is_query()) return std::nullopt;
      auto z = outer_nimue_->advise(mv->arg);
      if (!z) return std::nullopt;
      inner_arthur_ = inner_arthur_strategy_->start(mv->arg);
      inner_nimue_ = inner_nimue_strategy_->start(mv->arg, *z);
    }
  }

  void observe(const Term& answer) override {
    if (inner_arthur_) {
      inner_arthur_->observe(answer);
      inner_nimue_->observe(answer);
    }
  }

  std::unique_ptr<NimueSession> clone() const override {
    return std::make_unique<ComposedNimueSession>(*this);
  }

  void state_key(std::string& out) const override {
    out += "C(";
    outer_arthur_->state_key(out);
    out += ';';
    outer_nimue_->state_key(out);
    out += ';';
    if (inner_arthur_) {
      inner_arthur_->state_key(out);
      out += ';';
      inner_nimue_->state_key(out);
    } else {
      out += '-';
    }
    out += ')';
  }

 private:
  const ArthurStrategy* inner_arthur_strategy_;
  const NimueStrategy* inner_nimue_strategy_;
  std::unique_ptr<ArthurSession> outer_arthur_;
  std::unique_ptr<NimueSession> outer_nimue_;
  std::unique_ptr<ArthurSession> inner_arthur_;
  std::unique_ptr<NimueSession> inner_nimue_;
};

class ComposedArthur : public ArthurStrategy {
 public:
  ComposedArthur(ArthurPtr outer, ArthurPtr inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}
  std::unique_ptr<ArthurSession> start(const Term& x0) const override {
    return std::make_unique<ComposedArthurSession>(inner_.get(), outer_->start(x0));
  }

 private:
  ArthurPtr outer_;
  ArthurPtr inner_;
};

class ComposedNimue : public NimueStrategy {
 public:
  ComposedNimue(ArthurPtr outer_arthur, NimuePtr outer_nimue, ArthurPtr inner_arthur,
                NimuePtr inner_nimue)
      : outer_arthur_(std::move(outer_arthur)),
        outer_nimue_(std::move(outer_nimue)),
        inner_arthur_(std::move(inner_arthur)),
        inner_nimue_(std::move(inner_nimue)) {}
  std::unique_ptr<NimueSession> start(const Term& x0, const Term& c0) const override {
    return std::make_unique<ComposedNimueSession>(
        inner_arthur_.get(), inner_nimue_.get(), outer_arthur_->start(x0),
        outer_nimue_->start(x0, c0));
  }

 private:
  ArthurPtr outer_arthur_;
  NimuePtr outer_nimue_;
  ArthurPtr inner_arthur_;
  NimuePtr inner_nimue_;
};

// Routes a play to one of several strategies by looking at x0.
using ArthurRoute = std::function<std::optional<std::pair<ArthurPtr, Term>>(const Term&)>;
using NimueRoute = std::function<std::optional<std::pair<NimuePtr, std::pair<Term, Term>>>(
    const Term&, const Term&)>;

class RoutedArthur : public ArthurStrategy {
 public:
  explicit RoutedArthur(ArthurRoute route) : route_(std::move(route)) {}
  std::unique_ptr<ArthurSession> start(const Term& x0) const override {
    auto r = route_(x0);
    if (!r) return std::make_unique<DeadArthur>();
    return std::make_unique<TaggedArthur>(x0.str(), r->first->start(r->second));
  }

 private:
  ArthurRoute route_;
};

class RoutedNimue : public NimueStrategy {
 public:
  explicit RoutedNimue(NimueRoute route) : route_(std::move(route)) {}
  std::unique_ptr<NimueSession> start(const Term& x0, const Term& c0) const override {
    auto r = route_(x0, c0);
    if (!r) return std::make_unique<DeadNimue>();
    return std::make_unique<TaggedNimue>(x0.str(),
                                         r->first->start(r->second.first, r->second.second));
  }

 private:
  NimueRoute route_;
};

}  // namespace

BilayerFn join(const BilayerFn& f, const BilayerFn& g) {
  CellTable cells;
  ValueSet alphabet = f.alphabet();
  alphabet.insert(g.alphabet().begin(), g.alphabet().end());
  for (int tag = 0; tag < 2; ++tag) {
    const BilayerFn& part = tag == 0 ? f : g;
    for (const auto& [n, row] : part.cells()) {
      SecretRow out;
      for (const auto& [c, values] : row) out.emplace(Term::tagged(tag, c), values);
      cells.emplace(Term::tagged(tag, n), std::move(out));
    }
  }
  return BilayerFn("join(" + f.name() + "," + g.name() + ")", std::move(cells),
                   std::move(alphabet));
}

BilayerFn meet(const BilayerFn& f, const BilayerFn& g) {
  CellTable cells;
  ValueSet alphabet;
  for (const auto& v : f.alphabet()) alphabet.insert(Term::inl(v));
  for (const auto& v : g.alphabet()) alphabet.insert(Term::inr(v));
  for (const auto& [m, frow] : f.cells()) {
    for (const auto& [n, grow] : g.cells()) {
      SecretRow out;
      for (const auto& [c, fvals] : frow) {
        for (const auto& [d, gvals] : grow) {
          ValueSet values;
          for (const auto& a : fvals) values.insert(Term::inl(a));
          for (const auto& b : gvals) values.insert(Term::inr(b));
          out.emplace(Term::tuple({c, d}), std::move(values));
        }
      }
      cells.emplace(Term::tuple({m, n}), std::move(out));
    }
  }
  return BilayerFn("meet(" + f.name() + "," + g.name() + ")", std::move(cells),
                   std::move(alphabet));
}

BilayerFn pair(const Multifunction& f, const BilayerFn& g) {
  if (g.cells().size() != 1 || !g.cells().begin()->first.is_unit()) {
    throw Error("pair: " + g.name() + " must have the single public input *");
  }
  const SecretRow& grow = g.cells().begin()->second;
  CellTable cells;
  ValueSet alphabet;
  for (const auto& [n, fvals] : f) {
    SecretRow out;
    for (const auto& [c, gvals] : grow) {
      ValueSet values;
      for (const auto& a : fvals) {
        for (const auto& b : gvals) values.insert(Term::tuple({a, b}));
      }
      alphabet.insert(values.begin(), values.end());
      out.emplace(c, std::move(values));
    }
    cells.emplace(n, std::move(out));
  }
  return BilayerFn("pair(" + g.name() + ")", std::move(cells), std::move(alphabet));
}

BilayerFn sum(const std::map<std::uint64_t, BilayerFn>& parts, std::string name) {
  CellTable cells;
  ValueSet alphabet;
  for (const auto& [i, part] : parts) {
    alphabet.insert(part.alphabet().begin(), part.alphabet().end());
    for (const auto& [n, row] : part.cells()) {
      cells.emplace(Term::tuple({Term::nat(i), n}), row);
    }
  }
  return BilayerFn(std::move(name), std::move(cells), std::move(alphabet));
}

Witness compose(const Witness& outer, const Witness& inner) {
  Witness w;
  w.arthur = std::make_shared<ComposedArthur>(outer.arthur, inner.arthur);
  w.nimue = std::make_shared<ComposedNimue>(outer.arthur, outer.nimue, inner.arthur,
                                            inner.nimue);
  w.depth = outer.depth * inner.depth;
  w.label = "compose(" + outer.label + "," + inner.label + ")";
  return w;
}

Witness join_witness(const Witness& left, const Witness& right) {
  Witness w;
  ArthurPtr arthurs[2] = {left.arthur, right.arthur};
  NimuePtr nimues[2] = {left.nimue, right.nimue};
  w.arthur = std::make_shared<RoutedArthur>(
      [arthurs](const Term& x0) -> std::optional<std::pair<ArthurPtr, Term>> {
        if (x0.kind() != Term::Kind::kTagged) return std::nullopt;
        return std::make_pair(arthurs[x0.tag()], x0.inner());
      });
  w.nimue = std::make_shared<RoutedNimue>(
      [nimues](const Term& x0, const Term& c0)
          -> std::optional<std::pair<NimuePtr, std::pair<Term, Term>>> {
        if (x0.kind() != Term::Kind::kTagged || c0.kind() != Term::Kind::kTagged ||
            x0.tag() != c0.tag()) {
          return std::nullopt;
        }
        return std::make_pair(nimues[x0.tag()], std::make_pair(x0.inner(), c0.inner()));
      });
  w.depth = std::max(left.depth, right.depth);
  w.label = "join(" + left.label + "," + right.label + ")";
  return w;
}

Witness sum_witness(const std::map<std::uint64_t, Witness>& parts) {
  auto table = std::make_shared<const std::map<std::uint64_t, Witness>>(parts);
  auto split = [table](const Term& x0) -> const Witness* {
    if (x0.kind() != Term::Kind::kTuple || x0.items().size() != 2 ||
        !x0.items()[0].is_nat()) {
      return nullptr;
    }
    auto it = table->find(x0.items()[0].as_nat());
    return it == table->end() ? nullptr : &it->second;
  };
  Witness w;
  w.arthur = std::make_shared<RoutedArthur>(
      [split](const Term& x0) -> std::optional<std::pair<ArthurPtr, Term>> {
        const Witness* part = split(x0);
        if (!part) return std::nullopt;
        return std::make_pair(part->arthur, x0.items()[1]);
      });
  w.nimue = std::make_shared<RoutedNimue>(
      [split](const Term& x0, const Term& c0)
          -> std::optional<std::pair<NimuePtr, std::pair<Term, Term>>> {
        const Witness* part = split(x0);
        if (!part) return std::nullopt;
        return std::make_pair(part->nimue, std::make_pair(x0.items()[1], c0));
      });
  w.depth = 1;
  std::string label = "sum(";
  for (const auto& [i, part] : parts) {
    w.depth = std::max(w.depth, part.depth);
    if (label.size() > 4) label += ',';
    label += part.label;
  }
  w.label = label + ")";
  return w;
}

}  // namespace ltw
