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

#include "ltw/cli/workspace.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <filesystem>
#include <sstream>

#include "ltw/catalog/density.hpp"
#include "ltw/catalog/error_theorem.hpp"
#include "ltw/catalog/llpo.hpp"
#include "ltw/catalog/prob_error.hpp"
#include "ltw/closure.hpp"
#include "ltw/combinators.hpp"
#include "ltw/reduction.hpp"

namespace ltw {
namespace {

struct Expr {
  enum class Kind { kNumber, kName, kString, kCall };
  Kind kind = Kind::kNumber;
  std::string text;  // name, callee or string contents
  std::uint64_t number = 0;
  std::vector<Expr> args;
  std::size_t column = 1;
};

// Problem at a column of the current line.
struct LineError {
  std::size_t column;
  std::string message;
};

class ExprParser {
 public:
  ExprParser(std::string_view line, std::size_t offset) : line_(line), pos_(offset) {}

  Expr parse_all() {
    Expr e = expr();
    spaces();
    if (pos_ != line_.size()) fail("unexpected '" + std::string(1, line_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw LineError{pos_ + 1, message}; }

  void spaces() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
  }

  Expr expr() {
    spaces();
    Expr e;
    e.column = pos_ + 1;
    if (pos_ == line_.size()) fail("expected an expression");
    const char c = line_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      e.kind = Expr::Kind::kNumber;
      const std::size_t start = pos_;
      while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
      const std::string digits(line_.substr(start, pos_ - start));
      if (digits.size() > 18) fail("number too large");
      e.number = std::stoull(digits);
      return e;
    }
    if (c == '"') {
      e.kind = Expr::Kind::kString;
      const std::size_t close = line_.find('"', pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated string");
      e.text = std::string(line_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') fail("expected an expression");
    e.text = ident();
    spaces();
    if (pos_ < line_.size() && line_[pos_] == '(') {
      e.kind = Expr::Kind::kCall;
      ++pos_;
      spaces();
      if (pos_ < line_.size() && line_[pos_] == ')') {
        ++pos_;
        return e;
      }
      while (true) {
        e.args.push_back(expr());
        spaces();
        if (pos_ < line_.size() && line_[pos_] == ',') {
          ++pos_;
          continue;
        }
        if (pos_ < line_.size() && line_[pos_] == ')') {
          ++pos_;
          break;
        }
        fail("expected ',' or ')'");
      }
      return e;
    }
    e.kind = Expr::Kind::kName;
    return e;
  }

  std::string ident() {
    const std::size_t start = pos_;
    while (pos_ < line_.size() &&
           (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(line_.substr(start, pos_ - start));
  }

  std::string_view line_;
  std::size_t pos_;
};

class Evaluator;
template <class Result>
struct Constructor {
  int arity;  // -1: one or more
  std::function<Result(Evaluator&, const Expr&)> build;
};
using FnConstructor = Constructor<BilayerFn>;
using StrategyConstructor = Constructor<Witness>;

class Evaluator {
 public:
  explicit Evaluator(Workspace& ws) : ws_(ws) {}

  std::uint64_t number(const Expr& e) {
    if (e.kind != Expr::Kind::kNumber) throw LineError{e.column, "expected a number"};
    return e.number;
  }

  int small(const Expr& e) {
    const std::uint64_t n = number(e);
    if (n > 64) throw LineError{e.column, "value " + std::to_string(n) + " too large here"};
    return static_cast<int>(n);
  }

  std::string string(const Expr& e) {
    if (e.kind != Expr::Kind::kString) throw LineError{e.column, "expected a quoted string"};
    return e.text;
  }

  BilayerFn fn(const Expr& e);
  Witness strategy(const Expr& e);
  Workspace& ws() { return ws_; }

 private:
  Workspace& ws_;
};

template <class Build>
auto guarded(const Expr& e, Build build) {
  try {
    return build();
  } catch (const LineError&) {
    throw;
  } catch (const std::exception& ex) {
    throw LineError{e.column, e.text + ": " + ex.what()};
  }
}

const std::map<std::string, FnConstructor>& fn_table() {
  static const std::map<std::string, FnConstructor> table = [] {
    std::map<std::string, FnConstructor> t;
    auto n = [](Evaluator& ev, const Expr& e, std::size_t i) { return ev.number(e.args[i]); };
    t["error"] = {2, [n](Evaluator& ev, const Expr& e) { return error(n(ev, e, 0), n(ev, e, 1)); }};
    t["error_hard"] = {3, [n](Evaluator& ev, const Expr& e) {
                         return error_hard(n(ev, e, 0), n(ev, e, 1), n(ev, e, 2));
                       }};
    t["id"] = {1, [n](Evaluator& ev, const Expr& e) { return id_fn(n(ev, e, 0)); }};
    t["llpo"] = {3, [n](Evaluator& ev, const Expr& e) {
                   return llpo(n(ev, e, 0), n(ev, e, 1), n(ev, e, 2));
                 }};
    t["race"] = {1, [n](Evaluator& ev, const Expr& e) { return psi_fn(n(ev, e, 0)); }};
    t["prob_error"] = {4, [](Evaluator& ev, const Expr& e) {
                         return prob_error(ev.small(e.args[0]), ev.number(e.args[1]),
                                           ev.number(e.args[2]), ev.small(e.args[3]));
                       }};
    t["stage_target"] = {3, [](Evaluator& ev, const Expr& e) {
                           return stage_target(ev.small(e.args[0]), ev.number(e.args[1]),
                                               ev.number(e.args[2]));
                         }};
    t["denerror"] = {1, [n](Evaluator& ev, const Expr& e) { return denerror(n(ev, e, 0)); }};
    t["consolidation_target"] = {3, [n](Evaluator& ev, const Expr& e) {
                                   return consolidation_target(n(ev, e, 0), n(ev, e, 1),
                                                               n(ev, e, 2));
                                 }};
    t["closure"] = {3, [](Evaluator& ev, const Expr& e) {
                      return ClosureFn(ev.fn(e.args[0]), ev.small(e.args[1]),
                                       nat_range(ev.number(e.args[2])), ev.ws().budget)
                          .fn();
                    }};
    t["join"] = {2, [](Evaluator& ev, const Expr& e) {
                   return join(ev.fn(e.args[0]), ev.fn(e.args[1]));
                 }};
    t["meet"] = {2, [](Evaluator& ev, const Expr& e) {
                   return meet(ev.fn(e.args[0]), ev.fn(e.args[1]));
                 }};
    t["sum"] = {-1, [](Evaluator& ev, const Expr& e) {
                  std::map<std::uint64_t, BilayerFn> parts;
                  for (std::size_t i = 0; i < e.args.size(); ++i) parts.emplace(i, ev.fn(e.args[i]));
                  return sum(parts);
                }};
    t["file"] = {1, [](Evaluator& ev, const Expr& e) {
                   const std::filesystem::path path =
                       std::filesystem::path(ev.ws().base_dir) / ev.string(e.args[0]);
                   std::ifstream in(path);
                   if (!in) throw Error("cannot read " + path.string());
                   std::stringstream buf;
                   buf << in.rdbuf();
                   return BilayerFn::parse(buf.str());
                 }};
    return t;
  }();
  return table;
}

const std::map<std::string, StrategyConstructor>& strategy_table() {
  static const std::map<std::string, StrategyConstructor> table = [] {
    std::map<std::string, StrategyConstructor> t;
    auto n = [](Evaluator& ev, const Expr& e, std::size_t i) { return ev.number(e.args[i]); };
    auto triple = [](ReductionTriple r) {
      Witness w = lift(r);
      w.label = r.label;
      return w;
    };
    t["copy"] = {0, [](Evaluator&, const Expr&) { return copy_witness(); }};
    t["collapse_chain"] = {2, [n](Evaluator& ev, const Expr& e) {
                             return collapse_chain(n(ev, e, 0), n(ev, e, 1));
                           }};
    t["consolidation"] = {3, [n](Evaluator& ev, const Expr& e) {
                            return consolidation_strategy(n(ev, e, 0), n(ev, e, 1), n(ev, e, 2));
                          }};
    t["hard_collapse"] = {3, [n](Evaluator& ev, const Expr& e) {
                            return hard_collapse(n(ev, e, 0), n(ev, e, 1), n(ev, e, 2));
                          }};
    t["easy_direction"] = {3, [n, triple](Evaluator& ev, const Expr& e) {
                             return triple(easy_direction(n(ev, e, 0), n(ev, e, 1), n(ev, e, 2)));
                           }};
    t["error_to_hard"] = {2, [n, triple](Evaluator& ev, const Expr& e) {
                            return triple(error_to_hard(n(ev, e, 0), n(ev, e, 1)));
                          }};
    t["llpo_reduction"] = {3, [n, triple](Evaluator& ev, const Expr& e) {
                             return triple(llpo_reduction(n(ev, e, 0), n(ev, e, 1), n(ev, e, 2)));
                           }};
    t["denerror_reduction"] = {1, [n, triple](Evaluator& ev, const Expr& e) {
                                 return triple(denerror_reduction(n(ev, e, 0)));
                               }};
    t["error_to_prob_error"] = {4, [triple](Evaluator& ev, const Expr& e) {
                                  return triple(error_to_prob_error(
                                      ev.small(e.args[0]), ev.number(e.args[1]),
                                      ev.number(e.args[2]), ev.small(e.args[3])));
                                }};
    t["stage_strategy"] = {4, [](Evaluator& ev, const Expr& e) {
                             return stage_strategy(ev.small(e.args[0]), ev.number(e.args[1]),
                                                   ev.number(e.args[2]), ev.small(e.args[3]));
                           }};
    t["prob_error_strategy"] = {4, [](Evaluator& ev, const Expr& e) {
                                  return prob_error_strategy(
                                      ev.small(e.args[0]), ev.number(e.args[1]),
                                      ev.number(e.args[2]), ev.small(e.args[3]));
                                }};
    t["compose"] = {2, [](Evaluator& ev, const Expr& e) {
                      return compose(ev.strategy(e.args[0]), ev.strategy(e.args[1]));
                    }};
    t["join_witness"] = {2, [](Evaluator& ev, const Expr& e) {
                           return join_witness(ev.strategy(e.args[0]), ev.strategy(e.args[1]));
                         }};
    t["solve"] = {3, [](Evaluator& ev, const Expr& e) {
                    const auto r = solve_lt(ev.fn(e.args[0]), ev.fn(e.args[1]),
                                            ev.small(e.args[2]), ev.ws().budget);
                    if (!r.found()) throw Error("no witness (" + r.certificate.str() + ")");
                    return r.witness();
                  }};
    t["oq"] = {2, [triple](Evaluator& ev, const Expr& e) {
                 const auto r = solve_one_query(ev.fn(e.args[0]), ev.fn(e.args[1]), ev.ws().budget);
                 if (!r.triple) throw Error("no one-query triple (" + r.certificate.str() + ")");
                 return triple(r.triple->triple("oq"));
               }};
    return t;
  }();
  return table;
}

void check_arity(const Expr& e, int arity) {
  const bool ok = arity < 0 ? !e.args.empty() : e.args.size() == static_cast<std::size_t>(arity);
  if (!ok) {
    throw LineError{e.column, e.text + " takes " +
                                  (arity < 0 ? std::string("one or more") : std::to_string(arity)) +
                                  " arguments, got " + std::to_string(e.args.size())};
  }
}

BilayerFn Evaluator::fn(const Expr& e) {
  if (e.kind == Expr::Kind::kName) {
    auto it = ws_.functions.find(e.text);
    if (it == ws_.functions.end()) throw LineError{e.column, "unknown function " + e.text};
    return it->second;
  }
  if (e.kind != Expr::Kind::kCall) throw LineError{e.column, "expected a function"};
  auto it = fn_table().find(e.text);
  if (it == fn_table().end()) throw LineError{e.column, "unknown constructor " + e.text};
  check_arity(e, it->second.arity);
  return guarded(e, [&] { return it->second.build(*this, e); });
}

Witness Evaluator::strategy(const Expr& e) {
  if (e.kind == Expr::Kind::kName) {
    auto it = ws_.strategies.find(e.text);
    if (it == ws_.strategies.end()) throw LineError{e.column, "unknown strategy " + e.text};
    return it->second;
  }
  if (e.kind != Expr::Kind::kCall) throw LineError{e.column, "expected a strategy"};
  auto it = strategy_table().find(e.text);
  if (it == strategy_table().end()) {
    throw LineError{e.column, "unknown strategy constructor " + e.text};
  }
  check_arity(e, it->second.arity);
  return guarded(e, [&] { return it->second.build(*this, e); });
}

bool valid_name(std::string_view name) {
  if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

template <class Table>
std::vector<std::string> names_of(const Table& table) {
  std::vector<std::string> out;
  for (const auto& [name, c] : table) {
    out.push_back(name + "/" + (c.arity < 0 ? std::string("n") : std::to_string(c.arity)));
  }
  return out;
}

}  // namespace

const BilayerFn& Workspace::function(const std::string& name) const {
  auto it = functions.find(name);
  if (it == functions.end()) throw Error("no function named " + name);
  return it->second;
}

const Witness& Workspace::strategy(const std::string& name) const {
  auto it = strategies.find(name);
  if (it == strategies.end()) throw Error("no strategy named " + name);
  return it->second;
}

std::vector<std::string> function_constructors() { return names_of(fn_table()); }
std::vector<std::string> strategy_constructors() { return names_of(strategy_table()); }

Workspace parse_workspace(std::string_view text, std::string_view source, std::string base_dir) {
  Workspace ws;
  ws.base_dir = std::move(base_dir);
  Evaluator ev(ws);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      std::size_t pos = line.find_first_not_of(" \t");
      if (pos == std::string::npos || line[pos] == '#') continue;
      const std::size_t word_end = line.find_first_of(" \t", pos);
      const std::string keyword = line.substr(pos, word_end - pos);
      if (word_end == std::string::npos) throw LineError{pos + 1, keyword + " needs an argument"};
      std::size_t rest = line.find_first_not_of(" \t", word_end);
      if (rest == std::string::npos) throw LineError{word_end + 1, keyword + " needs an argument"};
      if (keyword == "budget") {
        Expr e = ExprParser(line, rest).parse_all();
        ws.budget = ev.number(e);
        continue;
      }
      if (keyword == "output") {
        ws.output_dir = line.substr(rest, line.find_last_not_of(" \t") + 1 - rest);
        continue;
      }
      if (keyword != "def" && keyword != "strategy") {
        throw LineError{pos + 1, "unknown keyword " + keyword + " (want def, strategy, budget or output)"};
      }
      const std::size_t eq = line.find('=', rest);
      if (eq == std::string::npos) throw LineError{rest + 1, "expected NAME = EXPR"};
      const std::size_t name_end = line.find_last_not_of(" \t", eq - 1);
      const std::string name =
          name_end == std::string::npos || name_end < rest ? "" : line.substr(rest, name_end + 1 - rest);
      if (!valid_name(name)) throw LineError{rest + 1, "bad name '" + name + "'"};
      if (ws.functions.count(name) || ws.strategies.count(name)) {
        throw LineError{rest + 1, name + " is already defined"};
      }
      const Expr e = ExprParser(line, eq + 1).parse_all();
      if (keyword == "def") {
        ws.functions.emplace(name, ev.fn(e).renamed(name));
      } else {
        Witness w = ev.strategy(e);
        if (w.label.empty()) w.label = name;
        ws.strategies.emplace(name, std::move(w));
      }
      ws.order.push_back(name);
    } catch (const LineError& err) {
      throw Error(std::string(source) + ":" + std::to_string(line_no) + ":" +
                  std::to_string(err.column) + ": " + err.message);
    }
  }
  return ws;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read workspace " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto parent = std::filesystem::path(path).parent_path();
  return parse_workspace(buf.str(), path, parent.empty() ? "." : parent.string());
}

}  // namespace ltw
