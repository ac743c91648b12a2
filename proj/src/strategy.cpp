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

#include "ltw/strategy.hpp"

namespace ltw {
namespace {

void append_history(std::string& out, const Terms& history) {
  out += '[';
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i > 0) out += ',';
    history[i].write(out);
  }
  out += ']';
}

class FnArthurSession : public ArthurSession {
 public:
  FnArthurSession(const ArthurFn* fn, Term x0) : fn_(fn), x0_(std::move(x0)) {}

  std::optional<ArthurMove> move() override {
    if (!cached_) cached_ = (*fn_)(x0_, answers_);
    return *cached_;
  }
  void observe(const Term& answer) override {
    answers_.push_back(answer);
    cached_.reset();
  }
  std::unique_ptr<ArthurSession> clone() const override {
    return std::make_unique<FnArthurSession>(*this);
  }
  void state_key(std::string& out) const override {
    x0_.write(out);
    append_history(out, answers_);
  }

 private:
  const ArthurFn* fn_;
  Term x0_;
  Terms answers_;
  std::optional<std::optional<ArthurMove>> cached_;
};

class FnArthur : public ArthurStrategy {
 public:
  explicit FnArthur(ArthurFn fn) : fn_(std::move(fn)) {}
  std::unique_ptr<ArthurSession> start(const Term& x0) const override {
    return std::make_unique<FnArthurSession>(&fn_, x0);
  }

 private:
  ArthurFn fn_;
};

class FnNimueSession : public NimueSession {
 public:
  FnNimueSession(const NimueFn* fn, Term x0, Term c0)
      : fn_(fn), x0_(std::move(x0)), c0_(std::move(c0)) {}

  std::optional<Term> advise(const Term& query) override {
    return (*fn_)(x0_, c0_, answers_, query);
  }
  void observe(const Term& answer) override { answers_.push_back(answer); }
  std::unique_ptr<NimueSession> clone() const override {
    return std::make_unique<FnNimueSession>(*this);
  }
  void state_key(std::string& out) const override {
    x0_.write(out);
    out += '|';
    c0_.write(out);
    append_history(out, answers_);
  }

 private:
  const NimueFn* fn_;
  Term x0_;
  Term c0_;
  Terms answers_;
};

class FnNimue : public NimueStrategy {
 public:
  explicit FnNimue(NimueFn fn) : fn_(std::move(fn)) {}
  std::unique_ptr<NimueSession> start(const Term& x0,
                                      const Term& c0) const override {
    return std::make_unique<FnNimueSession>(&fn_, x0, c0);
  }

 private:
  NimueFn fn_;
};

class TableArthurSession : public ArthurSession {
 public:
  TableArthurSession(const ArthurTable::Rows* rows, Terms history)
      : rows_(rows), history_(std::move(history)) {}

  std::optional<ArthurMove> move() override {
    auto it = rows_->find(history_);
    if (it == rows_->end()) return std::nullopt;
    return it->second;
  }
  void observe(const Term& answer) override { history_.push_back(answer); }
  std::unique_ptr<ArthurSession> clone() const override {
    return std::make_unique<TableArthurSession>(*this);
  }
  void state_key(std::string& out) const override {
    append_history(out, history_);
  }

 private:
  const ArthurTable::Rows* rows_;
  Terms history_;
};

class TableNimueSession : public NimueSession {
 public:
  TableNimueSession(const NimueTable::Rows* rows, Terms history)
      : rows_(rows), history_(std::move(history)) {}

  std::optional<Term> advise(const Term&) override {
    auto it = rows_->find(history_);
    if (it == rows_->end()) return std::nullopt;
    return it->second;
  }
  void observe(const Term& answer) override { history_.push_back(answer); }
  std::unique_ptr<NimueSession> clone() const override {
    return std::make_unique<TableNimueSession>(*this);
  }
  void state_key(std::string& out) const override {
    append_history(out, history_);
  }

 private:
  const NimueTable::Rows* rows_;
  Terms history_;
};

Terms read_history(TermReader& reader) {
  return reader.term_list('[', ']');
}

template <typename Row>
void read_rows(const Term& code, Row&& read_row) {
  TermReader reader(code.text());
  reader.skip_spaces();
  if (reader.at_end()) return;
  while (true) {
    reader.skip_spaces();
    Terms history = read_history(reader);
    reader.skip_spaces();
    reader.expect("->");
    reader.skip_spaces();
    read_row(std::move(history), reader);
    reader.skip_spaces();
    if (reader.at_end()) return;
    reader.expect(";");
  }
}

}  // namespace

std::string ArthurMove::str() const {
  std::string out = is_query() ? "query " : "terminate ";
  arg.write(out);
  return out;
}

ArthurMove ArthurMove::parse(TermReader& reader) {
  if (reader.accept("query ")) {
    reader.skip_spaces();
    return query(reader.term());
  }
  if (reader.accept("terminate ")) {
    reader.skip_spaces();
    return terminate(reader.term());
  }
  reader.fail("expected 'query' or 'terminate'");
}

std::string format_history(const Terms& history) {
  std::string out;
  append_history(out, history);
  return out;
}

ArthurPtr arthur_from_fn(ArthurFn fn) {
  return std::make_shared<FnArthur>(std::move(fn));
}

NimuePtr nimue_from_fn(NimueFn fn) {
  return std::make_shared<FnNimue>(std::move(fn));
}

std::unique_ptr<ArthurSession> ArthurTable::start(const Term& x0) const {
  Terms history;
  if (keyed_by_public_) history.push_back(x0);
  return std::make_unique<TableArthurSession>(&rows_, std::move(history));
}

Term ArthurTable::code() const {
  std::string out;
  bool first = true;
  for (const auto& [history, move] : rows_) {
    if (!first) out += "; ";
    first = false;
    append_history(out, history);
    out += " -> ";
    out += move.str();
  }
  return Term::code(std::move(out));
}

std::shared_ptr<const ArthurTable> ArthurTable::from_code(const Term& code,
                                                          bool keyed_by_public) {
  if (code.kind() != Term::Kind::kCode) throw Error("expected code, got " + code.str());
  Rows rows;
  try {
    read_rows(code, [&](Terms history, TermReader& reader) {
      if (rows.count(history)) reader.fail("duplicate history");
      rows.emplace(std::move(history), ArthurMove::parse(reader));
    });
  } catch (const ParseError& e) {
    throw Error(std::string("malformed Arthur code: ") + e.what());
  }
  return std::make_shared<ArthurTable>(std::move(rows), keyed_by_public);
}

std::unique_ptr<NimueSession> NimueTable::start(const Term& x0,
                                                const Term& c0) const {
  Terms history;
  if (keyed_by_input_) {
    history.push_back(x0);
    history.push_back(c0);
  }
  return std::make_unique<TableNimueSession>(&rows_, std::move(history));
}

Term NimueTable::code() const {
  std::string out;
  bool first = true;
  for (const auto& [history, secret] : rows_) {
    if (!first) out += "; ";
    first = false;
    append_history(out, history);
    out += " -> ";
    secret.write(out);
  }
  return Term::code(std::move(out));
}

std::shared_ptr<const NimueTable> NimueTable::from_code(const Term& code,
                                                        bool keyed_by_input) {
  if (code.kind() != Term::Kind::kCode) throw Error("expected code, got " + code.str());
  Rows rows;
  try {
    read_rows(code, [&](Terms history, TermReader& reader) {
      if (rows.count(history)) reader.fail("duplicate history");
      rows.emplace(std::move(history), reader.term());
    });
  } catch (const ParseError& e) {
    throw Error(std::string("malformed Nimue code: ") + e.what());
  }
  return std::make_shared<NimueTable>(std::move(rows), keyed_by_input);
}

Witness copy_witness() {
  Witness w;
  w.arthur = arthur_from_fn(
      [](const Term& x0, const Terms& answers) -> std::optional<ArthurMove> {
        if (answers.empty()) return ArthurMove::query(x0);
        return ArthurMove::terminate(answers.front());
      });
  w.nimue = nimue_from_fn([](const Term&, const Term& c0, const Terms&,
                             const Term&) -> std::optional<Term> { return c0; });
  w.depth = 1;
  w.label = "copy";
  return w;
}

}  // namespace ltw
