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

// Random tiny games and strategies shared by the engine tests and the
// acceptance runner.

#ifndef LTW_TESTS_SUPPORT_HPP_
#define LTW_TESTS_SUPPORT_HPP_

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ltw/bilayer.hpp"
#include "ltw/engine.hpp"
#include "ltw/strategy.hpp"
#include "ltw/trees.hpp"

namespace ltw::testing {

inline std::uint64_t mix(std::uint64_t seed, const std::string& s) {
  std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Publics 0..p-1, secrets 0..s-1, values below v; each cell a random subset
// (sometimes empty when allow_empty).
inline BilayerFn random_fn(std::mt19937_64& rng, const std::string& name, int p, int s,
                           int v, bool allow_empty) {
  CellTable cells;
  for (int n = 0; n < p; ++n) {
    for (int c = 0; c < s; ++c) {
      if (c > 0 && rng() % 4 == 0) continue;
      ValueSet values;
      for (int x = 0; x < v; ++x) {
        if (rng() % 2) values.insert(Term::nat(x));
      }
      if (values.empty() && !allow_empty) values.insert(Term::nat(rng() % v));
      cells[Term::nat(n)][Term::nat(c)] = values;
    }
  }
  return BilayerFn(name, std::move(cells), nat_range(v));
}

// Arthur whose moves are a pseudo-random function of what he has seen.
inline ArthurPtr hashed_arthur(std::uint64_t seed, const BilayerFn& f, const BilayerFn& g) {
  std::vector<Term> queries = g.publics();
  queries.push_back(Term::nat(999));  // sometimes an illegal query
  std::vector<Term> values(f.alphabet().begin(), f.alphabet().end());
  return arthur_from_fn([=](const Term& x0, const Terms& answers) -> std::optional<ArthurMove> {
    const std::uint64_t h = mix(seed, x0.str() + format_history(answers));
    if (h % 7 == 0) return std::nullopt;
    if (h % 3 == 0 || answers.size() > 3) {
      return ArthurMove::terminate(values[(h >> 8) % values.size()]);
    }
    return ArthurMove::query(queries[(h >> 8) % queries.size()]);
  });
}

inline NimuePtr hashed_nimue(std::uint64_t seed, const BilayerFn& g) {
  return nimue_from_fn([seed, g](const Term& x0, const Term& c0, const Terms& answers,
                                 const Term& u) -> std::optional<Term> {
    const std::uint64_t h =
        mix(seed, x0.str() + "|" + c0.str() + format_history(answers) + u.str());
    const auto& row = g.row(u);
    if (row.empty() || h % 11 == 0) return Term::nat(777);
    auto it = row.begin();
    std::advance(it, (h >> 8) % row.size());
    return it->first;
  });
}

// Merlin choosing uniformly among legal answers; occasionally illegal when
// `cheat` is set.
class RandomMerlin : public MerlinStrategy {
 public:
  RandomMerlin(const BilayerFn& g, Term x0, Term c0, std::uint64_t seed, bool cheat)
      : g_(g), x0_(std::move(x0)), c0_(std::move(c0)), rng_(seed), cheat_(cheat) {}
  std::pair<Term, Term> first() override { return {x0_, c0_}; }
  Term respond(const FullHistory& history) override {
    const ValueSet* cell = g_.cell(history.arthur.back().arg, history.nimue.back());
    if (cheat_ && rng_() % 5 == 0) return Term::nat(555);
    if (!cell || cell->empty()) return Term::nat(555);
    auto it = cell->begin();
    std::advance(it, rng_() % cell->size());
    return *it;
  }

 private:
  const BilayerFn& g_;
  Term x0_;
  Term c0_;
  std::mt19937_64 rng_;
  bool cheat_;
};

inline std::pair<Term, Term> random_input(std::mt19937_64& rng, const BilayerFn& f) {
  std::vector<std::pair<Term, Term>> all;
  for (const auto& [n, row] : f.cells()) {
    for (const auto& entry : row) all.emplace_back(n, entry.first);
  }
  return all[rng() % all.size()];
}

inline std::vector<ArthurMove> arthur_moves(const Transcript& t) {
  std::vector<ArthurMove> out;
  for (const auto& e : t.entries) {
    if (e.player == Player::kArthur) {
      TermReader r(e.move);
      out.push_back(ArthurMove::parse(r));
    }
  }
  return out;
}

struct FatInstance {
  Tree tree;
  std::map<Node, std::uint64_t> bound;
  std::uint64_t colors = 1;
  Coloring coloring;
};

// A uniform (colors * b)-fat tree with random letters, a random bound
// b <= max_b and a random leaf coloring.
inline FatInstance random_fat_instance(std::mt19937_64& rng, std::uint64_t max_colors,
                                       std::size_t max_height, std::uint64_t max_b) {
  FatInstance out;
  out.colors = rng() % max_colors + 1;
  const std::size_t height = rng() % (max_height + 1);
  std::set<Node> nodes{Node{}};
  std::vector<Node> frontier{Node{}};
  for (std::size_t k = 0; k < height; ++k) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      const std::uint64_t b = rng() % max_b + 1;
      out.bound[node] = b;
      const std::uint64_t width = out.colors * b + rng() % 2;
      std::set<std::uint64_t> letters;
      while (letters.size() < width) letters.insert(rng() % (width + 4));
      for (auto n : letters) {
        Node c = node;
        c.push_back(n);
        nodes.insert(c);
        next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  for (const auto& leaf : frontier) out.coloring[leaf] = rng() % out.colors;
  out.tree = Tree(std::move(nodes));
  return out;
}

// The four promised properties of an extraction.
inline bool extraction_holds(const FatInstance& in, const Monochromatic& out,
                             const BranchingBound& b) {
  if (!out.tree.subtree_of(in.tree) || !is_fat(out.tree, b)) return false;
  if (!out.tree.is_uniform() || out.tree.height() != in.tree.height()) return false;
  for (const auto& leaf : out.tree.leaves()) {
    if (in.coloring.at(leaf) != out.color) return false;
  }
  return true;
}

}  // namespace ltw::testing

#endif  // LTW_TESTS_SUPPORT_HPP_
