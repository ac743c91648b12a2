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

#include "ltw/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "json.hpp"
#include "ltw/solver.hpp"

namespace ltw {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

Json header(const char* kind, const std::string& source, const std::string& target) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["kind"] = kind;
  j["source"] = source;
  j["target"] = target;
  return j;
}

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json certificate_json(const SearchCertificate& c) {
  return {{"mode", c.mode_name()},
          {"depth", c.depth},
          {"arthur_candidates", c.arthur_candidates},
          {"positions", c.positions},
          {"budget", c.budget}};
}

const char* search_verdict(const SearchCertificate& c) {
  switch (c.mode) {
    case SearchCertificate::Mode::kFound: return "found";
    case SearchCertificate::Mode::kExhausted: return "none";
    case SearchCertificate::Mode::kBudget: return "inconclusive";
  }
  return "none";
}

int search_exit(const SearchCertificate& c) {
  return c.mode == SearchCertificate::Mode::kBudget ? kExitInconclusive : kExitOk;
}

Report finish(Json j, Clock::time_point start, int exit_code, std::string text) {
  j["wall_ms"] = millis_since(start);
  Report r;
  r.exit_code = exit_code;
  r.json = j.dump(2) + "\n";
  r.text = std::move(text);
  return r;
}

std::string outcome_kind(const Outcome& o) {
  const std::string s = o.str();
  return s.substr(0, s.find(' '));
}

Term pick(std::mt19937_64& rng, const std::vector<Term>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

class RandomLegalMerlin : public MerlinStrategy {
 public:
  RandomLegalMerlin(const BilayerFn& f, const BilayerFn& g, std::mt19937_64& rng)
      : f_(f), g_(g), rng_(rng) {}

  std::pair<Term, Term> first() override {
    std::vector<Term> publics;
    for (const auto& [n, row] : f_.cells()) {
      if (!row.empty()) publics.push_back(n);
    }
    const Term x0 = pick(rng_, publics);
    std::vector<Term> secrets;
    for (const auto& [c, values] : f_.row(x0)) secrets.push_back(c);
    return {x0, pick(rng_, secrets)};
  }

  Term respond(const FullHistory& history) override {
    const ValueSet* cell = g_.cell(history.arthur.back().arg, history.nimue.back());
    if (!cell || cell->empty()) return Term::unit();
    return pick(rng_, std::vector<Term>(cell->begin(), cell->end()));
  }

 private:
  const BilayerFn& f_;
  const BilayerFn& g_;
  std::mt19937_64& rng_;
};

std::string preview(const std::vector<Term>& items, std::size_t limit = 8) {
  std::string out;
  for (std::size_t i = 0; i < items.size() && i < limit; ++i) {
    out += (i ? ", " : "") + items[i].str();
  }
  if (items.size() > limit) out += ", ... (" + std::to_string(items.size()) + " total)";
  return out;
}

class HumanMerlin : public MerlinStrategy {
 public:
  HumanMerlin(const BilayerFn& f, const BilayerFn& g, std::istream& in, std::ostream& out)
      : f_(f), g_(g), in_(in), out_(out) {}

  std::pair<Term, Term> first() override {
    out_ << "publics of " << f_.name() << ": " << preview(f_.publics()) << "\n";
    while (true) {
      const std::string line = ask("your first move, PUBLIC | SECRET");
      try {
        TermReader r(line);
        r.skip_spaces();
        Term x0 = r.term();
        r.skip_spaces();
        r.expect("|");
        r.skip_spaces();
        Term c0 = r.term();
        r.skip_spaces();
        if (!r.at_end()) r.fail("trailing text");
        return {std::move(x0), std::move(c0)};
      } catch (const Error& e) {
        out_ << "could not read that: " << e.what() << "\n";
      }
    }
  }

  Term respond(const FullHistory& history) override {
    const Term& u = history.arthur.back().arg;
    const Term& z = history.nimue.back();
    out_ << "arthur queries " << u.str() << "; nimue answers the secret " << z.str() << "\n";
    const ValueSet* cell = g_.cell(u, z);
    if (!cell || cell->empty()) {
      out_ << "no legal answer exists here\n";
      return Term::unit();
    }
    const std::vector<Term> legal(cell->begin(), cell->end());
    out_ << "legal answers: " << preview(legal) << "\n";
    while (true) {
      const std::string line = ask("your answer");
      try {
        Term v = Term::parse(line);
        if (cell->count(v)) return v;
        out_ << "rule: Merlin's answer must lie in " << g_.name() << "(" << u.str() << " | "
             << z.str() << ") = " << format_values(*cell) << "\n";
      } catch (const Error& e) {
        out_ << "could not read that: " << e.what() << "\n";
      }
    }
  }

 private:
  std::string ask(const char* prompt) {
    out_ << prompt << "> " << std::flush;
    std::string line;
    if (!std::getline(in_, line)) throw Error("input ended before the play finished");
    return line;
  }

  const BilayerFn& f_;
  const BilayerFn& g_;
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace

std::string transcript_filename(const Transcript& t) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : t.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("transcript-") + buf + ".txt";
}

std::string save_transcript(const Transcript& t, const std::string& path,
                            const std::string& dir) {
  std::filesystem::path target = path;
  if (path.empty()) {
    std::filesystem::create_directories(dir);
    target = std::filesystem::path(dir) / transcript_filename(t);
  }
  std::ofstream out(target);
  if (!out) throw Error("cannot write " + target.string());
  out << t.str();
  return target.string();
}

Report cmd_solve(const Workspace& ws, const std::string& source, const std::string& target,
                 int depth, std::optional<std::uint64_t> budget) {
  const auto start = Clock::now();
  const auto r = solve_lt(ws.function(source), ws.function(target), depth,
                          budget.value_or(ws.budget));
  Json j = header("solve", source, target);
  j["depth"] = depth;
  j["verdict"] = search_verdict(r.certificate);
  j["certificate"] = certificate_json(r.certificate);
  if (r.found()) {
    j["witness"] = {{"depth", depth},
                    {"arthur", r.arthur->code().str()},
                    {"nimue", r.nimue->code().str()}};
  }
  return finish(std::move(j), start, search_exit(r.certificate),
                source + " <= " + target + " at depth " + std::to_string(depth) + ": " +
                    search_verdict(r.certificate) + " (" + r.certificate.str() + ")");
}

Report cmd_oq(const Workspace& ws, const std::string& source, const std::string& target,
              std::optional<std::uint64_t> budget) {
  const auto start = Clock::now();
  const auto r =
      solve_one_query(ws.function(source), ws.function(target), budget.value_or(ws.budget));
  Json j = header("oq", source, target);
  j["depth"] = 1;
  j["verdict"] = search_verdict(r.certificate);
  j["certificate"] = certificate_json(r.certificate);
  std::string text = source + " <=1 " + target + ": " + search_verdict(r.certificate);
  if (r.triple) {
    j["witness"] = {{"depth", 1}, {"triple", r.triple->str()}};
    text += "\n" + r.triple->str();
  }
  return finish(std::move(j), start, search_exit(r.certificate), text);
}

Report cmd_verify(const Workspace& ws, const std::string& source, const std::string& target,
                  const std::string& strategy, std::optional<int> depth) {
  const auto start = Clock::now();
  const Witness& w = ws.strategy(strategy);
  const int d = depth.value_or(w.depth);
  const Verdict v = verify_winning(ws.function(source), ws.function(target), *w.arthur,
                                   *w.nimue, d);
  Json j = header("verify", source, target);
  j["depth"] = d;
  j["verdict"] = v.winning ? "winning" : "losing";
  j["witness"] = {{"depth", w.depth}, {"label", w.label.empty() ? strategy : w.label}};
  j["verification"] = {{"plays", v.plays}, {"nodes", v.nodes}, {"memo_hits", v.memo_hits}};
  std::string text = strategy + " on G(" + source + ", " + target + "): " +
                     (v.winning ? "winning" : "losing") + " over " + std::to_string(v.plays) +
                     " plays";
  if (v.counter_play) {
    j["outcome"] = v.counter_play->outcome.str();
    text += "\ncounter play:\n" + v.counter_play->str();
  }
  Report r = finish(std::move(j), start, v.winning ? kExitOk : kExitDiagnostic, text);
  r.transcript = v.counter_play;
  return r;
}

Report cmd_replay(const Workspace& ws, const std::string& source, const std::string& target,
                  const std::string& transcript_text) {
  const auto start = Clock::now();
  const Transcript t = Transcript::parse(transcript_text);
  const Outcome o = replay(ws.function(source), ws.function(target), t);
  const bool same = o == t.outcome;
  Json j = header("replay", source, target);
  j["depth"] = t.depth;
  j["verdict"] = same ? "consistent" : "mismatch";
  j["outcome"] = o.str();
  j["recorded_outcome"] = t.outcome.str();
  return finish(std::move(j), start, same ? kExitOk : kExitDiagnostic,
                std::string("replayed outcome ") + o.str() +
                    (same ? " matches the record" : " differs from recorded " + t.outcome.str()));
}

Report cmd_poset(const Workspace& ws, const std::vector<std::string>& names, int depth,
                 std::optional<std::uint64_t> budget) {
  const auto start = Clock::now();
  std::vector<BilayerFn> items;
  for (const auto& name : names) items.push_back(ws.function(name));
  const PosetReport report = poset(items, depth, budget.value_or(ws.budget));
  Json j = Json::parse(report.json());
  j["verdict"] = report.inconclusive() ? "inconclusive" : "complete";
  Report r = finish(std::move(j), start, report.inconclusive() ? kExitInconclusive : kExitOk,
                    report.dot());
  r.dot = report.dot();
  return r;
}

Report cmd_sample(const Workspace& ws, const std::string& source, const std::string& target,
                  const std::string& strategy, std::uint64_t seed, int plays) {
  const auto start = Clock::now();
  const BilayerFn& f = ws.function(source);
  const BilayerFn& g = ws.function(target);
  const Witness& w = ws.strategy(strategy);
  std::mt19937_64 rng(seed);
  std::map<std::string, int> outcomes;
  std::optional<Transcript> failure;
  for (int i = 0; i < plays; ++i) {
    RandomLegalMerlin merlin(f, g, rng);
    Transcript t = play(f, g, *w.arthur, *w.nimue, merlin, w.depth);
    ++outcomes[outcome_kind(t.outcome)];
    if (!t.outcome.arthur_nimue_win() && !failure) failure = std::move(t);
  }
  Json j = header("sample", source, target);
  j["depth"] = w.depth;
  j["seed"] = seed;
  j["plays"] = plays;
  j["verdict"] = failure ? "counterexample" : "no-counterexample";
  j["outcomes"] = outcomes;
  std::string text = std::to_string(plays) + " random plays, seed " + std::to_string(seed) +
                     ": " + (failure ? "counterexample found" : "no counterexample");
  Report r = finish(std::move(j), start, failure ? kExitDiagnostic : kExitOk, text);
  r.transcript = failure;
  return r;
}

Report cmd_play(const Workspace& ws, const std::string& source, const std::string& target,
                const std::string& strategy, int depth, std::istream& in, std::ostream& out) {
  const auto start = Clock::now();
  const BilayerFn& f = ws.function(source);
  const BilayerFn& g = ws.function(target);
  Witness w;
  if (strategy.empty()) {
    const auto r = solve_lt(f, g, depth, ws.budget);
    if (!r.found()) {
      throw Error("no Arthur-Nimue strategy at depth " + std::to_string(depth) + " (" +
                  r.certificate.str() + ")");
    }
    w = r.witness();
  } else {
    w = ws.strategy(strategy);
    depth = w.depth;
  }
  HumanMerlin merlin(f, g, in, out);
  Transcript t = play(f, g, *w.arthur, *w.nimue, merlin, depth);
  out << "outcome: " << t.outcome.str() << "\n";
  Json j = header("play", source, target);
  j["depth"] = depth;
  j["verdict"] = outcome_kind(t.outcome);
  j["outcome"] = t.outcome.str();
  Report r = finish(std::move(j), start, kExitOk, "outcome " + t.outcome.str());
  r.transcript = std::move(t);
  return r;
}

}  // namespace ltw
