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

#include "ltw/catalog/error_theorem.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>

#include "ltw/combinators.hpp"

namespace ltw {
namespace {

using Nats = std::vector<std::uint64_t>;

std::string args(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

// One way of consolidating m normal blocks into a new hard block, which is
// numbered last; the other blocks keep their order.
struct Pattern {
  Nats merged;
  Nats kept;  // old blocks outside `merged`, ascending
  Term public_input;

  std::uint64_t renumber(std::uint64_t old) const {
    return std::lower_bound(kept.begin(), kept.end(), old) - kept.begin();
  }
  std::uint64_t merged_block() const { return kept.size(); }
};

struct Layout {
  Nats hard;
  std::vector<Pattern> patterns;
};

Layout make_layout(std::uint64_t m, std::uint64_t k, const Nats& hard) {
  Layout out{hard, {}};
  Nats normals;
  for (std::uint64_t a = 0; a < k; ++a) {
    if (!std::binary_search(hard.begin(), hard.end(), a)) normals.push_back(a);
  }
  for (const auto& pick : subsets(normals.size(), m)) {
    Pattern p;
    for (auto i : pick) p.merged.push_back(normals[i]);
    for (std::uint64_t a = 0; a < k; ++a) {
      if (!std::binary_search(p.merged.begin(), p.merged.end(), a)) p.kept.push_back(a);
    }
    Nats new_hard;
    for (auto h : hard) new_hard.push_back(p.renumber(h));
    new_hard.push_back(p.merged_block());
    p.public_input = nat_tuple(new_hard);
    out.patterns.push_back(std::move(p));
  }
  return out;
}

Nats distinct(const Nats& xs) {
  Nats out = xs;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_hard(const Layout& layout, std::uint64_t a) {
  return std::binary_search(layout.hard.begin(), layout.hard.end(), a);
}

Nats padded(Nats xs, std::uint64_t size) {
  const std::uint64_t fill = xs.front();
  while (xs.size() < size) xs.push_back(fill);
  xs.resize(size);
  return xs;
}

// Hits for the consolidated game breaking everything the original hits
// break outside the pattern, and the new block when the pattern is hit.
Nats consolidated_secret(const Layout& layout, const Pattern& p, const Nats& hits,
                         std::uint64_t new_hits) {
  const Nats d = distinct(hits);
  if (d.size() == 1 && is_hard(layout, d[0])) return Nats(new_hits, p.renumber(d[0]));
  if (d == p.merged) return Nats(new_hits, p.merged_block());
  Nats outside;
  for (auto a : d) {
    if (!is_hard(layout, a) && !std::binary_search(p.merged.begin(), p.merged.end(), a)) {
      outside.push_back(p.renumber(a));
    }
  }
  if (outside.empty()) return Nats(new_hits, p.merged_block());
  if (outside.size() > new_hits) throw Error("consolidation: too many hits to carry over");
  return padded(outside, new_hits);
}

// Hits for error_hard(m-1,k,n) once no pattern was fully hit.
Nats reduced_secret(const Layout& layout, const Nats& hits, std::uint64_t m) {
  const Nats d = distinct(hits);
  if (d.size() == 1 && is_hard(layout, d[0])) return Nats(m - 1, d[0]);
  Nats normals;
  for (auto a : d) {
    if (!is_hard(layout, a)) normals.push_back(a);
  }
  if (normals.empty()) return Nats(hits.begin(), hits.begin() + (m - 1));
  // More than m-1 normals only happens off the legal plays.
  if (normals.size() > m - 1) normals.resize(m - 1);
  return padded(normals, m - 1);
}

Witness lift_labeled(ReductionTriple t) {
  Witness w = lift(t);
  w.label = t.label;
  return w;
}

ReductionTriple single_hit_triple(std::uint64_t k, std::uint64_t n) {
  ReductionTriple t;
  t.label = "single_hit" + args(1, k, n);
  t.query = [](const Term&) { return std::optional<Term>(Term::unit()); };
  t.secret = [](const Term&, const Term& c) -> std::optional<Term> {
    const Nats hits = tuple_nats(c);
    if (hits.size() != 1) return std::nullopt;
    return Term::set(hits);
  };
  t.answer = [](const Term&, const Term& a) { return std::optional<Term>(a); };
  return t;
}

}  // namespace

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

std::uint64_t consolidated_hits(std::uint64_t m, std::uint64_t k, std::uint64_t n) {
  if (k < n + m) throw Error("consolidation needs m normal blocks");
  return std::max<std::uint64_t>(1, std::min(k - n - m, m));
}

std::uint64_t collapse_target(std::uint64_t m, std::uint64_t k, std::uint64_t n) {
  if (m == 0 || n > k) throw Error("collapse_target" + args(m, k, n) + " out of range");
  return ceil_div(k - n, m) + n;
}

BilayerFn consolidation_target(std::uint64_t m, std::uint64_t k, std::uint64_t n) {
  return join(error_hard(consolidated_hits(m, k, n), k - m + 1, n + 1),
              error_hard(m - 1, k, n));
}

Witness consolidation_strategy(std::uint64_t m, std::uint64_t k, std::uint64_t n) {
  if (m == 0 || m >= k || k < n + m) {
    throw Error("consolidation_strategy" + args(m, k, n) + " out of range");
  }
  const std::uint64_t new_hits = consolidated_hits(m, k, n);
  auto layouts = std::make_shared<std::map<Term, Layout>>();
  for (const auto& hard : subsets(k, n)) layouts->emplace(nat_tuple(hard), make_layout(m, k, hard));
  std::size_t rounds = 0;
  for (const auto& [key, layout] : *layouts) rounds = std::max(rounds, layout.patterns.size());

  Witness w;
  w.arthur = arthur_from_fn(
      [layouts](const Term& x0, const Terms& answers) -> std::optional<ArthurMove> {
        auto it = layouts->find(x0);
        if (it == layouts->end()) return std::nullopt;
        const auto& patterns = it->second.patterns;
        const std::size_t i = answers.size();
        if (i > patterns.size()) return ArthurMove::terminate(answers.back());
        if (i > 0) {
          const Pattern& p = patterns[i - 1];
          const Term& u = answers.back();
          if (!u.is_nat()) return std::nullopt;
          if (u.as_nat() < p.kept.size()) {
            return ArthurMove::terminate(Term::nat(p.kept[u.as_nat()]));
          }
          // A single merged block that escaped the hit is itself safe.
          if (p.merged.size() == 1) return ArthurMove::terminate(Term::nat(p.merged[0]));
        }
        if (i < patterns.size()) return ArthurMove::query(Term::inl(patterns[i].public_input));
        return ArthurMove::query(Term::inr(x0));
      });
  w.nimue = nimue_from_fn([layouts, m, new_hits](const Term& x0, const Term& c0,
                                                 const Terms& answers,
                                                 const Term&) -> std::optional<Term> {
    auto it = layouts->find(x0);
    if (it == layouts->end()) return std::nullopt;
    const Layout& layout = it->second;
    const Nats hits = tuple_nats(c0);
    const std::size_t i = answers.size();
    if (i < layout.patterns.size()) {
      return Term::inl(nat_tuple(consolidated_secret(layout, layout.patterns[i], hits, new_hits)));
    }
    return Term::inr(nat_tuple(reduced_secret(layout, hits, m)));
  });
  w.depth = static_cast<int>(rounds) + 1;
  w.label = "consolidation" + args(m, k, n);
  return w;
}

ReductionTriple easy_direction(std::uint64_t m, std::uint64_t k, std::uint64_t l) {
  if (m == 0 || m >= k) throw Error("easy_direction needs 0 < m < k");
  const std::uint64_t blocks = ceil_div(k, m);
  if (blocks > l) {
    throw Error("easy_direction" + args(m, k, l) + ": ceil(k/m) = " + std::to_string(blocks) +
                " exceeds " + std::to_string(l));
  }
  ReductionTriple t;
  t.label = "easy_direction" + args(m, k, l);
  t.query = [](const Term&) { return std::optional<Term>(Term::unit()); };
  t.secret = [m, k, blocks](const Term&, const Term& c) -> std::optional<Term> {
    const auto& forbidden = c.elems();
    if (forbidden.size() != 1) return std::nullopt;
    const std::uint64_t j = forbidden[0];
    Nats wrong;
    if (j < blocks) {
      for (std::uint64_t a = j * m; a < std::min(k, j * m + m); ++a) wrong.push_back(a);
    }
    // Short or missing blocks are topped up with the least other values.
    for (std::uint64_t a = 0; wrong.size() < m; ++a) {
      if (std::find(wrong.begin(), wrong.end(), a) == wrong.end()) wrong.push_back(a);
    }
    return Term::set(wrong);
  };
  t.answer = [m](const Term&, const Term& a) -> std::optional<Term> {
    if (!a.is_nat()) return std::nullopt;
    return Term::nat(a.as_nat() / m);
  };
  return t;
}

ReductionTriple error_to_hard(std::uint64_t m, std::uint64_t k) {
  ReductionTriple t;
  t.label = "error_to_hard(" + std::to_string(m) + "," + std::to_string(k) + ")";
  t.query = [](const Term&) { return std::optional<Term>(Term::tuple({})); };
  t.secret = [](const Term&, const Term& c) -> std::optional<Term> {
    return nat_tuple(c.elems());
  };
  t.answer = [](const Term&, const Term& a) { return std::optional<Term>(a); };
  return t;
}

Witness hard_collapse(std::uint64_t m, std::uint64_t k, std::uint64_t n) {
  if (m == 0 || m >= k || n > k) throw Error("hard_collapse" + args(m, k, n) + " out of range");
  if (m == 1) return lift_labeled(single_hit_triple(k, n));
  const std::uint64_t q = collapse_target(m, k, n);
  const std::uint64_t hits = consolidated_hits(m, k, n);
  auto branch = [q](Witness w, std::uint64_t reached) {
    if (reached == q) return w;
    return compose(w, lift_labeled(easy_direction(1, q, reached)));
  };
  Witness left = branch(hard_collapse(hits, k - m + 1, n + 1),
                        collapse_target(hits, k - m + 1, n + 1));
  Witness right = branch(hard_collapse(m - 1, k, n), collapse_target(m - 1, k, n));
  Witness w = compose(consolidation_strategy(m, k, n), join_witness(left, right));
  w.label = "hard_collapse" + args(m, k, n);
  return w;
}

Witness collapse_chain(std::uint64_t m, std::uint64_t k) {
  if (m == 0 || m >= k) throw Error("collapse_chain needs 0 < m < k");
  Witness w = compose(lift_labeled(error_to_hard(m, k)), hard_collapse(m, k, 0));
  w.label = "collapse_chain(" + std::to_string(m) + "," + std::to_string(k) + ")";
  return w;
}

}  // namespace ltw
