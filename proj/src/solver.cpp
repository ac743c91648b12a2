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

#include "ltw/solver.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "json.hpp"

namespace ltw {
namespace {

struct BudgetExceeded {};

using Mask = std::uint64_t;

// Search for one public input of f and a fixed query u.
class AnswerMapSearch {
 public:
  AnswerMapSearch(const std::vector<const ValueSet*>& targets,
                  const SecretRow& query_row, const std::vector<Term>& alphabet,
                  std::uint64_t& positions, std::uint64_t budget)
      : targets_(targets), alphabet_(alphabet), positions_(positions), budget_(budget) {
    ValueSet all;
    for (const auto& [z, cell] : query_row) all.insert(cell.begin(), cell.end());
    answers_.assign(all.begin(), all.end());
    for (const auto& [z, cell] : query_row) {
      secrets_.push_back(z);
      std::vector<std::size_t> idx;
      for (const auto& m : cell) {
        idx.push_back(std::lower_bound(answers_.begin(), answers_.end(), m) -
                      answers_.begin());
      }
      cells_.push_back(std::move(idx));
    }
    choice_.assign(answers_.size(), 0);
  }

  bool run() { return extend(0); }

  const std::vector<Term>& answers() const { return answers_; }
  Term value(std::size_t answer_index) const { return alphabet_[choice_[answer_index]]; }

  // Least secret whose answers all land in target c.
  std::optional<Term> secret_for(std::size_t c) const {
    for (std::size_t z = 0; z < secrets_.size(); ++z) {
      if (fits(c, z, answers_.size())) return secrets_[z];
    }
    return std::nullopt;
  }

 private:
  bool fits(std::size_t c, std::size_t z, std::size_t assigned) const {
    for (auto i : cells_[z]) {
      if (i < assigned && !targets_[c]->count(alphabet_[choice_[i]])) return false;
    }
    return true;
  }

  bool feasible(std::size_t assigned) const {
    for (std::size_t c = 0; c < targets_.size(); ++c) {
      bool any = false;
      for (std::size_t z = 0; z < secrets_.size() && !any; ++z) {
        any = fits(c, z, assigned);
      }
      if (!any) return false;
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == answers_.size()) return feasible(i);
    for (std::size_t v = 0; v < alphabet_.size(); ++v) {
      if (++positions_ > budget_) throw BudgetExceeded{};
      choice_[i] = v;
      if (feasible(i + 1) && extend(i + 1)) return true;
    }
    return false;
  }

  const std::vector<const ValueSet*>& targets_;
  const std::vector<Term>& alphabet_;
  std::uint64_t& positions_;
  std::uint64_t budget_;
  std::vector<Term> answers_;
  std::vector<Term> secrets_;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<std::size_t> choice_;
};

// Backward induction over sets of still-possible secrets for one x0.
class LtSearch {
 public:
  LtSearch(const BilayerFn& f, const BilayerFn& g, const Term& x0,
           SearchCertificate& cert)
      : f_(f), g_(g), x0_(x0), cert_(cert) {
    for (const auto& [c, cell] : f.row(x0)) {
      secrets_.push_back(c);
      targets_.push_back(&cell);
    }
    if (secrets_.size() > 63) throw Error("solve_lt: more than 63 secrets per public input");
    alphabet_.assign(f.alphabet().begin(), f.alphabet().end());
    for (const auto& u : g.publics()) {
      QueryInfo info;
      info.query = u;
      const ValueSet all = g.answers(u);
      info.answers.assign(all.begin(), all.end());
      if (info.answers.size() > 63) throw Error("solve_lt: more than 63 answers per query");
      // Distinct answer sets, dropping those that contain another one.
      std::vector<std::pair<Mask, Term>> sets;
      for (const auto& [z, cell] : g.row(u)) {
        Mask m = 0;
        for (const auto& v : cell) {
          m |= Mask{1} << (std::lower_bound(info.answers.begin(), info.answers.end(), v) -
                           info.answers.begin());
        }
        sets.emplace_back(m, z);
      }
      for (std::size_t i = 0; i < sets.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < sets.size() && keep; ++j) {
          if (i == j) continue;
          const Mask a = sets[i].first, b = sets[j].first;
          const bool b_inside_a = (a & b) == b;
          if (b_inside_a && (a != b || j < i)) keep = false;
        }
        if (keep) info.options.push_back(sets[i]);
      }
      queries_.push_back(std::move(info));
    }
  }

  bool solve(Mask live, int depth) {
    const auto key = std::make_pair(live, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.win;
    if (++cert_.positions > cert_.budget) throw BudgetExceeded{};
    Decision d;
    d.win = decide(live, depth, d);
    return memo_.emplace(key, std::move(d)).first->second.win;
  }

  void emit(Mask live, int depth, Terms history, ArthurTable::Rows& arthur,
            NimueTable::Rows& nimue) const {
    if (live == 0) return;
    const Decision& d = memo_.at({live, depth});
    Terms arthur_key{x0_};
    arthur_key.insert(arthur_key.end(), history.begin(), history.end());
    if (d.query < 0) {
      arthur.emplace(arthur_key, ArthurMove::terminate(alphabet_[d.value]));
      return;
    }
    const QueryInfo& q = queries_[d.query];
    arthur.emplace(arthur_key, ArthurMove::query(q.query));
    std::vector<Mask> next(q.answers.size(), 0);
    std::size_t k = 0;
    for (std::size_t c = 0; c < secrets_.size(); ++c) {
      if (!(live >> c & 1)) continue;
      const auto& opt = q.options[d.assignment[k++]];
      Terms nimue_key{x0_, secrets_[c]};
      nimue_key.insert(nimue_key.end(), history.begin(), history.end());
      nimue.emplace(nimue_key, opt.second);
      for (std::size_t a = 0; a < q.answers.size(); ++a) {
        if (opt.first >> a & 1) next[a] |= Mask{1} << c;
      }
    }
    for (std::size_t a = 0; a < q.answers.size(); ++a) {
      Terms h = history;
      h.push_back(q.answers[a]);
      emit(next[a], depth - 1, std::move(h), arthur, nimue);
    }
  }

  Mask all() const {
    return secrets_.size() == 64 ? ~Mask{0} : (Mask{1} << secrets_.size()) - 1;
  }

 private:
  struct QueryInfo {
    Term query;
    std::vector<Term> answers;
    std::vector<std::pair<Mask, Term>> options;
  };
  struct Decision {
    bool win = false;
    int query = -1;
    std::size_t value = 0;
    std::vector<std::size_t> assignment;
  };

  bool decide(Mask live, int depth, Decision& d) {
    if (live == 0) return true;
    for (std::size_t v = 0; v < alphabet_.size(); ++v) {
      bool ok = true;
      for (std::size_t c = 0; c < secrets_.size() && ok; ++c) {
        if (live >> c & 1) ok = targets_[c]->count(alphabet_[v]) > 0;
      }
      if (ok) {
        d.value = v;
        return true;
      }
    }
    if (depth == 0) return false;
    std::vector<std::size_t> members;
    for (std::size_t c = 0; c < secrets_.size(); ++c) {
      if (live >> c & 1) members.push_back(c);
    }
    for (std::size_t qi = 0; qi < queries_.size(); ++qi) {
      ++cert_.arthur_candidates;
      const QueryInfo& q = queries_[qi];
      if (q.options.empty()) continue;
      std::vector<std::size_t> pick(members.size(), 0);
      while (true) {
        if (++cert_.positions > cert_.budget) throw BudgetExceeded{};
        bool ok = true;
        for (std::size_t a = 0; a < q.answers.size() && ok; ++a) {
          Mask next = 0;
          for (std::size_t k = 0; k < members.size(); ++k) {
            if (q.options[pick[k]].first >> a & 1) next |= Mask{1} << members[k];
          }
          ok = solve(next, depth - 1);
        }
        if (ok) {
          d.query = static_cast<int>(qi);
          d.assignment = pick;
          return true;
        }
        std::size_t k = members.size();
        while (k > 0 && ++pick[k - 1] == q.options.size()) pick[--k] = 0;
        if (k == 0) break;
      }
    }
    return false;
  }

  struct KeyHash {
    std::size_t operator()(const std::pair<Mask, int>& k) const {
      return std::hash<Mask>{}(k.first * 31 + static_cast<Mask>(k.second));
    }
  };

  const BilayerFn& f_;
  const BilayerFn& g_;
  Term x0_;
  SearchCertificate& cert_;
  std::vector<Term> secrets_;
  std::vector<const ValueSet*> targets_;
  std::vector<Term> alphabet_;
  std::vector<QueryInfo> queries_;
  std::unordered_map<std::pair<Mask, int>, Decision, KeyHash> memo_;
};

}  // namespace

const char* SearchCertificate::mode_name() const {
  switch (mode) {
    case Mode::kFound:
      return "found";
    case Mode::kExhausted:
      return "exhausted";
    case Mode::kBudget:
      return "budget";
  }
  return "?";
}

std::string SearchCertificate::str() const {
  return std::string(mode_name()) + " depth=" + std::to_string(depth) +
         " arthur_candidates=" + std::to_string(arthur_candidates) +
         " positions=" + std::to_string(positions) +
         " budget=" + std::to_string(budget);
}

OneQueryResult solve_one_query(const BilayerFn& f, const BilayerFn& g,
                               std::uint64_t budget) {
  OneQueryResult result;
  SearchCertificate& cert = result.certificate;
  cert.depth = 1;
  cert.budget = budget;
  const std::vector<Term> alphabet(f.alphabet().begin(), f.alphabet().end());
  TripleTable table;
  try {
    for (const auto& [n, row] : f.cells()) {
      std::vector<const ValueSet*> targets;
      for (const auto& entry : row) targets.push_back(&entry.second);
      bool found = false;
      for (const auto& [u, query_row] : g.cells()) {
        ++cert.arthur_candidates;
        AnswerMapSearch search(targets, query_row, alphabet, cert.positions, budget);
        if (!search.run()) continue;
        table.query.emplace(n, u);
        for (std::size_t i = 0; i < search.answers().size(); ++i) {
          table.answer.emplace(std::make_pair(n, search.answers()[i]), search.value(i));
        }
        std::size_t c = 0;
        for (const auto& entry : row) {
          table.secret.emplace(std::make_pair(n, entry.first), *search.secret_for(c++));
        }
        found = true;
        break;
      }
      if (!found) {
        cert.mode = SearchCertificate::Mode::kExhausted;
        return result;
      }
    }
  } catch (const BudgetExceeded&) {
    cert.mode = SearchCertificate::Mode::kBudget;
    return result;
  }
  cert.mode = SearchCertificate::Mode::kFound;
  result.triple = std::move(table);
  return result;
}

Witness LtResult::witness() const {
  if (!found()) throw Error("no witness was found");
  Witness w;
  w.arthur = arthur;
  w.nimue = nimue;
  w.depth = certificate.depth;
  w.label = "solved";
  return w;
}

LtResult solve_lt(const BilayerFn& f, const BilayerFn& g, int depth,
                  std::uint64_t budget) {
  if (depth < 0) throw Error("depth must be non-negative");
  LtResult result;
  SearchCertificate& cert = result.certificate;
  cert.depth = depth;
  cert.budget = budget;
  ArthurTable::Rows arthur;
  NimueTable::Rows nimue;
  try {
    for (const auto& x0 : f.publics()) {
      LtSearch search(f, g, x0, cert);
      if (!search.solve(search.all(), depth)) {
        cert.mode = SearchCertificate::Mode::kExhausted;
        return result;
      }
      search.emit(search.all(), depth, {}, arthur, nimue);
    }
  } catch (const BudgetExceeded&) {
    cert.mode = SearchCertificate::Mode::kBudget;
    return result;
  }
  cert.mode = SearchCertificate::Mode::kFound;
  result.arthur = std::make_shared<ArthurTable>(std::move(arthur), true);
  result.nimue = std::make_shared<NimueTable>(std::move(nimue), true);
  return result;
}

bool refines(const Multifunction& h, const Multifunction& g) {
  for (const auto& [n, allowed] : g) {
    auto it = h.find(n);
    if (it == h.end()) return false;
    if (!std::includes(allowed.begin(), allowed.end(), it->second.begin(),
                       it->second.end())) {
      return false;
    }
  }
  return true;
}

bool PosetReport::inconclusive() const {
  for (const auto& row : cells) {
    for (const auto& c : row) {
      if (c.certificate.mode == SearchCertificate::Mode::kBudget) return true;
    }
  }
  return false;
}

std::string PosetReport::dot() const {
  const std::size_t n = names.size();
  auto le = [&](std::size_t i, std::size_t j) { return cells[i][j].reducible(); };
  auto strictly_below = [&](std::size_t i, std::size_t j) {
    return le(i, j) && !le(j, i);
  };
  // Each equivalence class is drawn through its first member.
  std::vector<std::size_t> rep(n);
  for (std::size_t i = 0; i < n; ++i) {
    rep[i] = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (le(i, j) && le(j, i)) {
        rep[i] = rep[j];
        break;
      }
    }
  }
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') out += '\\';
      out += ch;
    }
    return out + "\"";
  };
  std::string out = "digraph {\n";
  for (const auto& name : names) out += "  " + quote(name) + ";\n";
  for (std::size_t a = 0; a < n; ++a) {
    if (rep[a] != a) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (rep[b] != b || !strictly_below(b, a)) continue;
      bool covered = false;
      for (std::size_t k = 0; k < n && !covered; ++k) {
        covered = rep[k] == k && strictly_below(b, k) && strictly_below(k, a);
      }
      if (!covered) out += "  " + quote(names[a]) + " -> " + quote(names[b]) + ";\n";
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (rep[i] != i) {
      out += "  " + quote(names[rep[i]]) + " -> " + quote(names[i]) +
             " [dir=none, style=dashed];\n";
    }
  }
  out += "}\n";
  return out;
}

std::string PosetReport::json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kPosetSchemaVersion;
  j["kind"] = "poset";
  j["depth"] = depth;
  j["names"] = names;
  auto matrix = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < cells[i].size(); ++k) {
      const auto& c = cells[i][k].certificate;
      nlohmann::ordered_json cell;
      cell["source"] = names[i];
      cell["target"] = names[k];
      cell["result"] = c.mode == SearchCertificate::Mode::kFound ? "reducible"
                       : c.mode == SearchCertificate::Mode::kBudget ? "inconclusive"
                                                                    : "not-at-depth";
      cell["certificate"] = {{"mode", c.mode_name()},
                             {"depth", c.depth},
                             {"arthur_candidates", c.arthur_candidates},
                             {"positions", c.positions},
                             {"budget", c.budget}};
      row.push_back(cell);
    }
    matrix.push_back(row);
  }
  j["matrix"] = matrix;
  j["reflexivity_failures"] = reflexivity_failures;
  j["transitivity_failures"] = transitivity_failures;
  return j.dump(2) + "\n";
}

PosetReport poset(const std::vector<BilayerFn>& items, int depth, std::uint64_t budget) {
  PosetReport r;
  r.depth = depth;
  for (const auto& f : items) {
    if (std::find(r.names.begin(), r.names.end(), f.name()) != r.names.end()) {
      throw Error("duplicate name " + f.name());
    }
    r.names.push_back(f.name());
  }
  const std::size_t n = items.size();
  r.cells.assign(n, std::vector<PosetCell>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r.cells[i][j].certificate = solve_lt(items[i], items[j], depth, budget).certificate;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!r.cells[i][i].reducible()) r.reflexivity_failures.push_back(r.names[i]);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (r.cells[i][j].reducible() && r.cells[j][k].reducible() &&
            !r.cells[i][k].reducible()) {
          r.transitivity_failures.push_back(r.names[i] + " <= " + r.names[j] +
                                            " <= " + r.names[k]);
        }
      }
    }
  }
  return r;
}

}  // namespace ltw
