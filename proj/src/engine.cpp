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

#include "ltw/engine.hpp"

#include <atomic>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace ltw {
namespace {

Outcome violation(Player p, int round, std::string reason) {
  Outcome o;
  o.kind = Outcome::Kind::kRuleViolation;
  o.player = p;
  o.round = round;
  o.reason = std::move(reason);
  return o;
}

Outcome merlin_win(std::string reason) {
  Outcome o;
  o.kind = Outcome::Kind::kMerlinWin;
  o.reason = std::move(reason);
  return o;
}

Outcome arthur_nimue_win(Term v) {
  Outcome o;
  o.kind = Outcome::Kind::kArthurNimueWin;
  o.final_value = std::move(v);
  return o;
}

Outcome depth_exhausted() { return Outcome{}; }

std::string first_move(const Term& x0, const Term& c0) {
  return x0.str() + " | " + c0.str();
}

// Outcome of Arthur's move, or nullopt if a query is to be answered.
std::optional<Outcome> judge_arthur(const BilayerFn& f, const BilayerFn& g,
                                    const Term& x0, const Term& c0,
                                    const std::optional<ArthurMove>& mv,
                                    int round, int depth) {
  if (!mv) return violation(Player::kArthur, round, "no move");
  if (!mv->is_query()) {
    const ValueSet* target = f.cell(x0, c0);
    if (target->count(mv->arg)) return arthur_nimue_win(mv->arg);
    return merlin_win("value " + mv->arg.str() + " not in " + f.name() + "(" +
                      first_move(x0, c0) + ")");
  }
  if (round > depth) return depth_exhausted();
  if (!g.has_public(mv->arg)) {
    return violation(Player::kArthur, round,
                     "query " + mv->arg.str() + " outside dom " + g.name());
  }
  return std::nullopt;
}

std::optional<Outcome> judge_nimue(const BilayerFn& g, const Term& u,
                                   const std::optional<Term>& z, int round) {
  if (!z) return violation(Player::kNimue, round, "no move");
  if (!g.contains(u, *z)) {
    return violation(Player::kNimue, round,
                     "secret " + z->str() + " outside dom " + g.name());
  }
  if (g.cell(u, *z)->empty()) {
    return violation(Player::kMerlin, round, "no legal answer");
  }
  return std::nullopt;
}

struct Explorer {
  const BilayerFn& f;
  const BilayerFn& g;
  int depth;
  bool memoize;
  Term x0;
  Term c0;
  std::vector<TranscriptEntry> path;
  std::unordered_set<std::string> won;
  std::uint64_t plays = 0;
  std::uint64_t nodes = 0;
  std::uint64_t memo_hits = 0;
  std::optional<Transcript> counter;

  void fail(const Outcome& o) {
    Transcript t;
    t.depth = depth;
    t.x0 = x0;
    t.c0 = c0;
    t.entries = path;
    t.outcome = o;
    counter = std::move(t);
  }

  // True when every Merlin continuation from here is an Arthur-Nimue win.
  bool explore(ArthurSession& arthur, NimueSession& nimue, int round) {
    ++nodes;
    std::string key;
    if (memoize) {
      arthur.state_key(key);
      key += '#';
      nimue.state_key(key);
      key += '#';
      key += std::to_string(round);
      if (won.count(key)) {
        ++memo_hits;
        ++plays;
        return true;
      }
    }
    const auto mv = arthur.move();
    if (mv) path.push_back({round, Player::kArthur, mv->str()});
    if (auto o = judge_arthur(f, g, x0, c0, mv, round, depth)) {
      ++plays;
      if (!o->arthur_nimue_win()) {
        fail(*o);
        return false;
      }
      if (mv) path.pop_back();
      if (memoize) won.insert(std::move(key));
      return true;
    }
    const Term& u = mv->arg;
    const auto z = nimue.advise(u);
    if (z) path.push_back({round, Player::kNimue, z->str()});
    if (auto o = judge_nimue(g, u, z, round)) {
      ++plays;
      if (!o->arthur_nimue_win()) {
        fail(*o);
        return false;
      }
      path.pop_back();
      path.pop_back();
      if (memoize) won.insert(std::move(key));
      return true;
    }
    const ValueSet& answers = *g.cell(u, *z);
    std::size_t left = answers.size();
    for (const auto& m : answers) {
      path.push_back({round, Player::kMerlin, m.str()});
      bool ok;
      if (--left == 0) {
        arthur.observe(m);
        nimue.observe(m);
        ok = explore(arthur, nimue, round + 1);
      } else {
        auto a = arthur.clone();
        auto n = nimue.clone();
        a->observe(m);
        n->observe(m);
        ok = explore(*a, *n, round + 1);
      }
      if (!ok) return false;
      path.pop_back();
    }
    path.pop_back();
    path.pop_back();
    if (memoize) won.insert(std::move(key));
    return true;
  }
};

}  // namespace

const char* player_name(Player p) {
  switch (p) {
    case Player::kMerlin:
      return "merlin";
    case Player::kArthur:
      return "arthur";
    case Player::kNimue:
      return "nimue";
  }
  return "?";
}

std::string Outcome::str() const {
  switch (kind) {
    case Kind::kArthurNimueWin:
      return "arthur-nimue-win " + final_value.str();
    case Kind::kMerlinWin:
      return "merlin-win " + reason;
    case Kind::kRuleViolation:
      return std::string("rule-violation ") + player_name(player) + " " +
             std::to_string(round) + " " + reason;
    case Kind::kDepthExhausted:
      return "depth-exhausted";
  }
  return "?";
}

Outcome Outcome::parse(std::string_view text) {
  const std::string s(text);
  const auto space = s.find(' ');
  const std::string head = s.substr(0, space);
  const std::string tail = space == std::string::npos ? "" : s.substr(space + 1);
  Outcome o;
  if (head == "arthur-nimue-win") {
    o.kind = Kind::kArthurNimueWin;
    o.final_value = Term::parse(tail);
  } else if (head == "merlin-win") {
    o.kind = Kind::kMerlinWin;
    o.reason = tail;
  } else if (head == "rule-violation") {
    o.kind = Kind::kRuleViolation;
    std::istringstream words(tail);
    std::string who;
    words >> who >> o.round;
    if (!words) throw Error("bad outcome: " + s);
    if (who == "merlin") {
      o.player = Player::kMerlin;
    } else if (who == "arthur") {
      o.player = Player::kArthur;
    } else if (who == "nimue") {
      o.player = Player::kNimue;
    } else {
      throw Error("bad outcome player: " + who);
    }
    std::getline(words, o.reason);
    if (!o.reason.empty() && o.reason[0] == ' ') o.reason.erase(0, 1);
  } else if (head == "depth-exhausted" && tail.empty()) {
    o.kind = Kind::kDepthExhausted;
  } else {
    throw Error("bad outcome: " + s);
  }
  return o;
}

std::string Transcript::str() const {
  std::string out = "depth " + std::to_string(depth) + "\n";
  for (const auto& e : entries) {
    out += "round " + std::to_string(e.round) + " " + player_name(e.player) +
           " " + e.move + "\n";
  }
  out += "outcome " + outcome.str() + "\n";
  return out;
}

Transcript Transcript::parse(std::string_view text) {
  Transcript t;
  std::istringstream in{std::string(text)};
  std::string line;
  bool have_first = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream words(line);
    std::string head;
    words >> head;
    auto rest = [&] {
      std::string r;
      std::getline(words, r);
      const auto start = r.find_first_not_of(' ');
      return start == std::string::npos ? std::string() : r.substr(start);
    };
    if (head == "depth") {
      words >> t.depth;
    } else if (head == "round") {
      TranscriptEntry e;
      std::string who;
      words >> e.round >> who;
      if (who == "merlin") {
        e.player = Player::kMerlin;
      } else if (who == "arthur") {
        e.player = Player::kArthur;
      } else if (who == "nimue") {
        e.player = Player::kNimue;
      } else {
        throw Error("transcript line " + std::to_string(line_no) + ": unknown player");
      }
      e.move = rest();
      if (!have_first) {
        if (e.player != Player::kMerlin || e.round != 0) {
          throw Error("transcript must open with Merlin's first move");
        }
        TermReader r(e.move);
        t.x0 = r.term();
        r.skip_spaces();
        r.expect("|");
        r.skip_spaces();
        t.c0 = r.term();
        have_first = true;
      }
      t.entries.push_back(std::move(e));
    } else if (head == "outcome") {
      t.outcome = Outcome::parse(rest());
    } else {
      throw Error("transcript line " + std::to_string(line_no) + ": unknown record");
    }
  }
  if (!have_first) throw Error("transcript has no first move");
  return t;
}

Term ScriptedMerlin::respond(const FullHistory& history) {
  const std::size_t i = history.merlin.size();
  if (i < answers_.size()) return answers_[i];
  const ValueSet* cell = g_->cell(history.arthur.back().arg, history.nimue.back());
  if (cell && !cell->empty()) return *cell->begin();
  return Term::unit();
}

Transcript play(const BilayerFn& f, const BilayerFn& g, const ArthurStrategy& arthur,
                const NimueStrategy& nimue, MerlinStrategy& merlin, int depth) {
  if (depth < 1) throw Error("depth must be at least 1");
  Transcript t;
  t.depth = depth;
  auto [x0, c0] = merlin.first();
  t.x0 = x0;
  t.c0 = c0;
  t.entries.push_back({0, Player::kMerlin, first_move(x0, c0)});
  if (!f.contains(x0, c0)) {
    t.outcome = violation(Player::kMerlin, 0, "first move outside dom " + f.name());
    return t;
  }
  FullHistory history{x0, c0, {}, {}, {}};
  auto a = arthur.start(x0);
  auto n = nimue.start(x0, c0);
  for (int round = 1;; ++round) {
    const auto mv = a->move();
    if (mv) {
      t.entries.push_back({round, Player::kArthur, mv->str()});
      history.arthur.push_back(*mv);
    }
    if (auto o = judge_arthur(f, g, x0, c0, mv, round, depth)) {
      t.outcome = *o;
      return t;
    }
    const auto z = n->advise(mv->arg);
    if (z) {
      t.entries.push_back({round, Player::kNimue, z->str()});
      history.nimue.push_back(*z);
    }
    if (auto o = judge_nimue(g, mv->arg, z, round)) {
      t.outcome = *o;
      return t;
    }
    const Term m = merlin.respond(history);
    t.entries.push_back({round, Player::kMerlin, m.str()});
    if (!g.cell(mv->arg, *z)->count(m)) {
      t.outcome = violation(Player::kMerlin, round,
                            "answer " + m.str() + " outside " + g.name() + "(" +
                                first_move(mv->arg, *z) + ")");
      return t;
    }
    history.merlin.push_back(m);
    a->observe(m);
    n->observe(m);
  }
}

Verdict verify_winning(const BilayerFn& f, const BilayerFn& g,
                       const ArthurStrategy& arthur, const NimueStrategy& nimue,
                       int depth, const VerifyOptions& options) {
  if (depth < 1) throw Error("depth must be at least 1");
  std::vector<std::pair<Term, Term>> roots;
  for (const auto& [x0, row] : f.cells()) {
    for (const auto& entry : row) roots.emplace_back(x0, entry.first);
  }
  struct RootResult {
    bool done = false;
    bool ok = true;
    std::optional<Transcript> counter;
    std::uint64_t plays = 0, nodes = 0, memo_hits = 0;
  };
  std::vector<RootResult> results(roots.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> first_fail{roots.size()};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= roots.size() || i > first_fail.load()) return;
      Explorer ex{f, g, depth, options.memoize, roots[i].first, roots[i].second,
                  {}, {}, 0, 0, 0, std::nullopt};
      ex.path.push_back({0, Player::kMerlin, first_move(ex.x0, ex.c0)});
      auto a = arthur.start(ex.x0);
      auto n = nimue.start(ex.x0, ex.c0);
      RootResult& r = results[i];
      r.ok = ex.explore(*a, *n, 1);
      r.counter = std::move(ex.counter);
      r.plays = ex.plays;
      r.nodes = ex.nodes;
      r.memo_hits = ex.memo_hits;
      r.done = true;
      if (!r.ok) {
        std::size_t cur = first_fail.load();
        while (i < cur && !first_fail.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads == 1 || roots.size() < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Verdict v;
  v.winning = true;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const RootResult& r = results[i];
    v.plays += r.plays;
    v.nodes += r.nodes;
    v.memo_hits += r.memo_hits;
    if (r.done && !r.ok && v.winning) {
      v.winning = false;
      v.counter_play = r.counter;
    }
  }
  return v;
}

Outcome replay(const BilayerFn& f, const BilayerFn& g, const Transcript& t) {
  // Feed each player its recorded moves in order.
  ArthurTable::Rows arthur_rows;
  NimueTable::Rows nimue_rows;
  Terms answers;
  Terms visible{t.x0};
  Terms full{t.x0, t.c0};
  for (const auto& e : t.entries) {
    if (e.round == 0) continue;
    TermReader r(e.move);
    switch (e.player) {
      case Player::kArthur:
        arthur_rows.emplace(visible, ArthurMove::parse(r));
        break;
      case Player::kNimue:
        nimue_rows.emplace(full, r.term());
        break;
      case Player::kMerlin: {
        Term m = r.term();
        answers.push_back(m);
        visible.push_back(m);
        full.push_back(m);
        break;
      }
    }
  }
  ArthurTable arthur(std::move(arthur_rows), true);
  NimueTable nimue(std::move(nimue_rows), true);
  ScriptedMerlin merlin(g, t.x0, t.c0, answers);
  return play(f, g, arthur, nimue, merlin, t.depth).outcome;
}

}  // namespace ltw
