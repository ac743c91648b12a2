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

// Finite trees of natural-number strings and monochromatic fat subtrees.

#ifndef LTW_TREES_HPP_
#define LTW_TREES_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ltw {

using Node = std::vector<std::uint64_t>;

std::string format_node(const Node& node);
Node parse_node(std::string_view text);

class Tree {
 public:
  // The one-node tree.
  Tree();
  // Throws Error unless `nodes` is nonempty and prefix-closed.
  explicit Tree(std::set<Node> nodes);

  const std::set<Node>& nodes() const { return nodes_; }
  bool contains(const Node& node) const { return nodes_.count(node) > 0; }
  // Last letters of the immediate successors, ascending.
  std::vector<std::uint64_t> successors(const Node& node) const;
  bool is_leaf(const Node& node) const;
  std::vector<Node> leaves() const;
  std::vector<Node> interior() const;
  std::size_t height() const;
  bool is_uniform() const;
  bool subtree_of(const Tree& other) const;
  std::size_t size() const { return nodes_.size(); }

  // One node per line, sorted.
  std::string str() const;
  static Tree parse(std::string_view text);

  friend bool operator==(const Tree& a, const Tree& b) { return a.nodes_ == b.nodes_; }

 private:
  std::set<Node> nodes_;
};

using Coloring = std::map<Node, std::uint64_t>;
// `leaf: color` lines.
std::string format_coloring(const Coloring& coloring);
Coloring parse_coloring(std::string_view text);

// Required number of successors at each interior node.
using BranchingBound = std::function<std::uint64_t(const Node&)>;
BranchingBound constant_bound(std::uint64_t b);
// Throws Error when asked about a node missing from the map.
BranchingBound bound_from_map(std::map<Node, std::uint64_t> values);
BranchingBound scaled(BranchingBound b, std::uint64_t factor);

bool is_fat(const Tree& t, const BranchingBound& b);
std::size_t rank(const Tree& t);

// Full tree of the given branching and height.
Tree full_tree(std::uint64_t branching, std::size_t height);
// Strings t of length <= height with t(s) < factor * b(t restricted to s).
Tree bounded_strings(const BranchingBound& b, std::uint64_t factor, std::size_t height);

struct ColoredTree {
  Tree tree;
  Coloring coloring;
};

// Pads every short leaf with a full `branching`-ary tree up to the height of
// `t`; new leaves inherit the color of the leaf they extend.
ColoredTree uniformize(const Tree& t, const Coloring& coloring, std::uint64_t branching);

struct Monochromatic {
  Tree tree;
  std::uint64_t color = 0;
};

// Needs a uniform (colors * b)-fat tree and a coloring of its leaves below
// `colors`. Throws Error otherwise.
Monochromatic extract_monochromatic(const Tree& t, const BranchingBound& b,
                                    std::uint64_t colors, const Coloring& coloring);

// Needs a uniform (m * colors + 1)-fat tree; returns an (m+1)-fat
// monochromatic subtree.
Monochromatic cenzer_hinman(const Tree& t, std::uint64_t m, std::uint64_t colors,
                            const Coloring& coloring);

}  // namespace ltw

#endif  // LTW_TREES_HPP_
