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

#ifndef LTW_ENGINE_HPP_
#define LTW_ENGINE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltw/bilayer.hpp"
#include "ltw/strategy.hpp"

namespace ltw {

enum class Player { kMerlin, kArthur, kNimue };
const char* player_name(Player p);

struct Outcome {
  enum class Kind { kArthurNimueWin, kMerlinWin, kRuleViolation, kDepthExhausted };
  Kind kind = Kind::kDepthExhausted;
  Term final_value;        // kArthurNimueWin
  std::string reason;      // kMerlinWin, kRuleViolation
  Player player = Player::kMerlin;  // kRuleViolation
  int round = 0;           // kRuleViolation

  // Arthur and Nimue win outright or Merlin broke a rule first.
  bool arthur_nimue_win() const {
    return kind == Kind::kArthurNimueWin ||
           (kind == Kind::kRuleViolation && player == Player::kMerlin);
  }
  std::string str() const;
  // Inverse of str().
  static Outcome parse(std::string_view text);
  friend bool operator==(const Outcome& a, const Outcome& b) {
    return a.str() == b.str();
  }
};

struct TranscriptEntry {
  int round = 0;
  Player player = Player::kMerlin;
  std::string move;  // core grammar
};

struct Transcript {
  int depth = 1;
  Term x0;
  Term c0;
  std::vector<TranscriptEntry> entries;
  Outcome outcome;

  // depth N / round N <player> <move> ... / outcome <...>
  std::string str() const;
  static Transcript parse(std::string_view text);
};

struct FullHistory {
  Term x0;
  Term c0;
  std::vector<ArthurMove> arthur;
  Terms nimue;
  Terms merlin;
};

class MerlinStrategy {
 public:
  virtual ~MerlinStrategy() = default;
  virtual std::pair<Term, Term> first() = 0;
  virtual Term respond(const FullHistory& history) = 0;
};

// Merlin that plays a fixed first move and then a fixed answer list; once the
// list runs out it gives the least legal answer.
class ScriptedMerlin : public MerlinStrategy {
 public:
  ScriptedMerlin(const BilayerFn& g, Term x0, Term c0, Terms answers)
      : g_(&g), x0_(std::move(x0)), c0_(std::move(c0)), answers_(std::move(answers)) {}
  std::pair<Term, Term> first() override { return {x0_, c0_}; }
  Term respond(const FullHistory& history) override;

 private:
  const BilayerFn* g_;
  Term x0_;
  Term c0_;
  Terms answers_;
};

Transcript play(const BilayerFn& f, const BilayerFn& g, const ArthurStrategy& arthur,
                const NimueStrategy& nimue, MerlinStrategy& merlin, int depth);

struct Verdict {
  bool winning = false;
  std::optional<Transcript> counter_play;
  std::uint64_t plays = 0;     // leaves of the Merlin choice tree explored
  std::uint64_t nodes = 0;     // game positions visited
  std::uint64_t memo_hits = 0;
};

struct VerifyOptions {
  // Reuse the result of positions whose session state keys repeat.
  bool memoize = true;
  // Worker threads for independent first moves; 0 picks hardware concurrency.
  unsigned threads = 1;
};

// Exhaustive check over every first move in dom(f) and every Merlin answer.
Verdict verify_winning(const BilayerFn& f, const BilayerFn& g,
                       const ArthurStrategy& arthur, const NimueStrategy& nimue,
                       int depth, const VerifyOptions& options = {});
inline Verdict verify_winning(const BilayerFn& f, const BilayerFn& g,
                              const Witness& w,
                              const VerifyOptions& options = {}) {
  return verify_winning(f, g, *w.arthur, *w.nimue, w.depth, options);
}

// Recomputes the outcome of a recorded play from its moves alone.
Outcome replay(const BilayerFn& f, const BilayerFn& g, const Transcript& t);

}  // namespace ltw

#endif  // LTW_ENGINE_HPP_
