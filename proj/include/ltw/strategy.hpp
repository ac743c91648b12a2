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

#ifndef LTW_STRATEGY_HPP_
#define LTW_STRATEGY_HPP_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltw/bilayer.hpp"
#include "ltw/term.hpp"

namespace ltw {

struct ArthurMove {
  enum class Kind { kQuery, kTerminate };
  Kind kind = Kind::kTerminate;
  Term arg;

  static ArthurMove query(Term u) { return {Kind::kQuery, std::move(u)}; }
  static ArthurMove terminate(Term v) { return {Kind::kTerminate, std::move(v)}; }
  bool is_query() const { return kind == Kind::kQuery; }

  std::string str() const;
  static ArthurMove parse(TermReader& reader);
  friend bool operator==(const ArthurMove& a, const ArthurMove& b) {
    return a.kind == b.kind && a.arg == b.arg;
  }
};

// One play from Arthur's point of view. Arthur is started on Merlin's public
// input and afterwards only ever sees Merlin's answers.
class ArthurSession {
 public:
  virtual ~ArthurSession() = default;
  // The next move; repeated calls without observe() return the same move.
  // nullopt means the strategy has no move here.
  virtual std::optional<ArthurMove> move() = 0;
  virtual void observe(const Term& answer) = 0;
  virtual std::unique_ptr<ArthurSession> clone() const = 0;
  // Appends a string that determines all future behavior of the session.
  virtual void state_key(std::string& out) const = 0;
};

class ArthurStrategy {
 public:
  virtual ~ArthurStrategy() = default;
  virtual std::unique_ptr<ArthurSession> start(const Term& x0) const = 0;
};

// One play from Nimue's point of view: she knows Merlin's full first move,
// Arthur's current query and every answer.
class NimueSession {
 public:
  virtual ~NimueSession() = default;
  virtual std::optional<Term> advise(const Term& query) = 0;
  virtual void observe(const Term& answer) = 0;
  virtual std::unique_ptr<NimueSession> clone() const = 0;
  virtual void state_key(std::string& out) const = 0;
};

class NimueStrategy {
 public:
  virtual ~NimueStrategy() = default;
  virtual std::unique_ptr<NimueSession> start(const Term& x0,
                                              const Term& c0) const = 0;
};

using ArthurPtr = std::shared_ptr<const ArthurStrategy>;
using NimuePtr = std::shared_ptr<const NimueStrategy>;

// An Arthur-Nimue pair together with the query budget it is meant for.
struct Witness {
  ArthurPtr arthur;
  NimuePtr nimue;
  int depth = 1;
  std::string label;
};

using ArthurFn =
    std::function<std::optional<ArthurMove>(const Term& x0, const Terms& answers)>;
using NimueFn = std::function<std::optional<Term>(
    const Term& x0, const Term& c0, const Terms& answers, const Term& query)>;

// Strategies given as functions of the visible history. The Arthur function
// is handed nothing but x0 and the answers, which keeps it honest.
ArthurPtr arthur_from_fn(ArthurFn fn);
NimuePtr nimue_from_fn(NimueFn fn);

// Decision table keyed by visible history. With `keyed_by_public`, the key
// starts with x0; otherwise only answers are used (restricted game).
class ArthurTable : public ArthurStrategy {
 public:
  using Rows = std::map<Terms, ArthurMove>;
  ArthurTable(Rows rows, bool keyed_by_public)
      : rows_(std::move(rows)), keyed_by_public_(keyed_by_public) {}

  std::unique_ptr<ArthurSession> start(const Term& x0) const override;
  const Rows& rows() const { return rows_; }
  bool keyed_by_public() const { return keyed_by_public_; }

  // Rows `[h1,h2] -> query u` or `[h] -> terminate v`, joined by "; ".
  Term code() const;
  static std::shared_ptr<const ArthurTable> from_code(const Term& code,
                                                      bool keyed_by_public);

 private:
  Rows rows_;
  bool keyed_by_public_;
};

// Nimue table keyed by [x0, c0, answers...], or by answers alone for the
// restricted game.
class NimueTable : public NimueStrategy {
 public:
  using Rows = std::map<Terms, Term>;
  NimueTable(Rows rows, bool keyed_by_input)
      : rows_(std::move(rows)), keyed_by_input_(keyed_by_input) {}

  std::unique_ptr<NimueSession> start(const Term& x0,
                                      const Term& c0) const override;
  const Rows& rows() const { return rows_; }

  Term code() const;
  static std::shared_ptr<const NimueTable> from_code(const Term& code,
                                                     bool keyed_by_input);

 private:
  Rows rows_;
  bool keyed_by_input_;
};

// Arthur queries his own input once and echoes the answer; Nimue passes the
// secret along. Wins G(f, f) at depth 1.
Witness copy_witness();

std::string format_history(const Terms& history);

}  // namespace ltw

#endif  // LTW_STRATEGY_HPP_
