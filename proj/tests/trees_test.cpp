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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ltw/term.hpp"
#include "ltw/trees.hpp"
#include "support.hpp"

using namespace ltw;

namespace {

Tree path(std::size_t length) {
  std::set<Node> nodes;
  Node n;
  nodes.insert(n);
  for (std::size_t i = 0; i < length; ++i) {
    n.push_back(0);
    nodes.insert(n);
  }
  return Tree(nodes);
}

// Rank straight from the inductive definition.
std::size_t rank_oracle(const Tree& t, const Node& at) {
  std::size_t best = 0;
  for (auto n : t.successors(at)) {
    Node c = at;
    c.push_back(n);
    best = std::max(best, rank_oracle(t, c) + 1);
  }
  return best;
}

}  // namespace

TEST_CASE("fatness") {
  CHECK(is_fat(full_tree(3, 2), constant_bound(3)));
  CHECK_FALSE(is_fat(full_tree(3, 2), constant_bound(4)));
  CHECK(is_fat(path(4), constant_bound(1)));
  CHECK_FALSE(is_fat(path(4), constant_bound(2)));
  // Bounded strings with b = 1 and factor 3 form the full ternary tree.
  const Tree bounded = bounded_strings(constant_bound(1), 3, 3);
  CHECK(bounded == full_tree(3, 3));
  CHECK(is_fat(bounded, scaled(constant_bound(1), 3)));
  CHECK(Tree().leaves().size() == 1);
}

TEST_CASE("rank") {
  CHECK(rank(Tree()) == 0);
  CHECK(rank(path(3)) == 3);
  for (std::size_t h = 0; h < 5; ++h) CHECK(rank(full_tree(2, h)) == h);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto in = testing::random_fat_instance(rng, 3, 3, 2);
    std::set<Node> nodes;
    for (const auto& n : in.tree.nodes()) {
      if (n.empty() || rng() % 3) nodes.insert(n);
    }
    // Re-close under prefixes.
    std::set<Node> closed;
    for (const auto& n : nodes) {
      for (std::size_t k = 0; k <= n.size(); ++k) closed.insert(Node(n.begin(), n.begin() + k));
    }
    const Tree t(closed);
    CHECK(rank(t) == rank_oracle(t, {}));
  }
}

TEST_CASE("least color wins ties at height one") {
  const Tree t(std::set<Node>{{}, {0}, {1}});
  const Coloring c{{{0}, 1}, {{1}, 0}};
  const auto out = extract_monochromatic(t, constant_bound(1), 2, c);
  CHECK(out.color == 0);
  CHECK(out.tree == Tree(std::set<Node>{{}, {1}}));
}

TEST_CASE("a constant coloring prunes to the least successors") {
  const Tree t = full_tree(4, 2);
  Coloring c;
  for (const auto& leaf : t.leaves()) c[leaf] = 1;
  const auto out = extract_monochromatic(t, constant_bound(2), 2, c);
  CHECK(out.color == 1);
  CHECK(out.tree == full_tree(2, 2));
}

TEST_CASE("inputs are checked") {
  const Tree t = full_tree(3, 2);
  Coloring c;
  for (const auto& leaf : t.leaves()) c[leaf] = 0;
  CHECK_THROWS_AS(extract_monochromatic(t, constant_bound(2), 2, c), Error);
  CHECK_THROWS_AS(extract_monochromatic(t, constant_bound(0), 2, c), Error);
  CHECK_THROWS_AS(extract_monochromatic(path(2), constant_bound(1), 1, {}), Error);
  c[{0, 0}] = 5;
  CHECK_THROWS_AS(extract_monochromatic(t, constant_bound(1), 2, c), Error);
  const Tree ragged(std::set<Node>{{}, {0}, {1}, {1, 0}});
  CHECK_THROWS_AS(extract_monochromatic(ragged, constant_bound(1), 1,
                                        {{{0}, 0}, {{1, 0}, 0}}),
                  Error);
  CHECK_THROWS_AS(Tree(std::set<Node>{{}, {0, 1}}), Error);
}

TEST_CASE("ternary height two, two colors: 2-fat monochromatic") {
  std::mt19937_64 rng(9);
  const Tree t = full_tree(3, 2);
  for (int i = 0; i < 100; ++i) {
    Coloring c;
    for (const auto& leaf : t.leaves()) c[leaf] = rng() % 2;
    const auto out = cenzer_hinman(t, 1, 2, c);
    CHECK(is_fat(out.tree, constant_bound(2)));
    CHECK(out.tree.height() == 2);
    for (const auto& leaf : out.tree.leaves()) CHECK(c.at(leaf) == out.color);
  }
  Coloring c;
  for (const auto& leaf : full_tree(2, 1).leaves()) c[leaf] = 0;
  CHECK_THROWS_AS(cenzer_hinman(full_tree(2, 1), 1, 2, c), Error);
}

TEST_CASE("constant bounds agree across both entry points") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t colors = rng() % 3 + 1;
    const std::uint64_t m = rng() % 2 + 1;
    const Tree t = full_tree(colors * (m + 1), rng() % 3 + 1);
    Coloring c;
    for (const auto& leaf : t.leaves()) c[leaf] = rng() % colors;
    const auto a = cenzer_hinman(t, m, colors, c);
    const auto b = extract_monochromatic(t, constant_bound(m + 1), colors, c);
    CHECK(a.tree == b.tree);
    CHECK(a.color == b.color);
  }
}

TEST_CASE("random fat trees") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto in = testing::random_fat_instance(rng, 3, 3, 3);
    const BranchingBound b = bound_from_map(in.bound);
    const auto out = extract_monochromatic(in.tree, b, in.colors, in.coloring);
    CHECK(testing::extraction_holds(in, out, b));
    // Determinism.
    CHECK(extract_monochromatic(in.tree, b, in.colors, in.coloring).tree == out.tree);
  }
}

TEST_CASE("short leaves are padded before extraction") {
  const Tree ragged(std::set<Node>{{}, {0}, {1}, {2}, {2, 0}, {2, 1}, {2, 2}});
  const Coloring c{{{0}, 0}, {{1}, 1}, {{2, 0}, 1}, {{2, 1}, 0}, {{2, 2}, 1}};
  const auto padded = uniformize(ragged, c, 3);
  CHECK(padded.tree.is_uniform());
  CHECK(padded.tree.size() == 13);
  CHECK(padded.coloring.at({0, 2}) == 0);
  const auto out = cenzer_hinman(padded.tree, 1, 2, padded.coloring);
  CHECK(is_fat(out.tree, constant_bound(2)));
}

TEST_CASE("text forms") {
  const Tree t = full_tree(2, 2);
  CHECK(t.str() == "[]\n[0]\n[0,0]\n[0,1]\n[1]\n[1,0]\n[1,1]\n");
  CHECK(Tree::parse(t.str()) == t);
  const Coloring c{{{0, 1}, 2}, {{1, 0}, 0}};
  CHECK(format_coloring(c) == "[0,1]: 2\n[1,0]: 0\n");
  CHECK(parse_coloring(format_coloring(c)) == c);
  CHECK_THROWS_AS(parse_coloring("[0] 1\n"), Error);
}
