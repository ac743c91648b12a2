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

#include "ltw/trees.hpp"

#include <algorithm>
#include <sstream>

#include "ltw/term.hpp"

namespace ltw {
namespace {

Node child(const Node& t, std::uint64_t n) {
  Node out = t;
  out.push_back(n);
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

// Shared by both extraction entry points; the callers check fatness.
Monochromatic extract(const Tree& t, const BranchingBound& b, const Coloring& coloring) {
  const std::size_t h = t.height();
  // level_color[k][node]: the least color with enough successors, per level.
  std::vector<std::map<Node, std::uint64_t>> level_color(h + 1);
  for (const auto& leaf : t.leaves()) level_color[h][leaf] = coloring.at(leaf);
  for (std::size_t k = h; k > 0; --k) {
    for (const auto& node : t.nodes()) {
      if (node.size() != k - 1) continue;
      const std::uint64_t need = b(node);
      std::map<std::uint64_t, std::uint64_t> count;
      for (auto n : t.successors(node)) ++count[level_color[k].at(child(node, n))];
      auto it = std::find_if(count.begin(), count.end(),
                             [need](const auto& e) { return e.second >= need; });
      if (it == count.end()) {
        throw Error("no color has " + std::to_string(need) + " successors at " +
                    format_node(node));
      }
      level_color[k - 1][node] = it->first;
    }
  }
  const std::uint64_t color = level_color[0].at(Node{});
  std::set<Node> kept{Node{}};
  std::vector<Node> frontier{Node{}};
  for (std::size_t k = 0; k < h; ++k) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      const std::uint64_t need = b(node);
      std::uint64_t taken = 0;
      for (auto n : t.successors(node)) {
        if (taken == need) break;
        Node c = child(node, n);
        if (level_color[k + 1].at(c) != color) continue;
        kept.insert(c);
        next.push_back(std::move(c));
        ++taken;
      }
    }
    frontier = std::move(next);
  }
  Monochromatic out{Tree(std::move(kept)), color};

  // Postconditions.
  if (!out.tree.subtree_of(t)) throw Error("extraction left the input tree");
  if (!is_fat(out.tree, b)) throw Error("extracted tree is not fat enough");
  if (!out.tree.is_uniform() || out.tree.height() != h) {
    throw Error("extracted tree changed shape");
  }
  for (const auto& leaf : out.tree.leaves()) {
    if (coloring.at(leaf) != color) throw Error("extracted tree is not monochromatic");
  }
  return out;
}

void check_extraction_input(const Tree& t, const BranchingBound& b, std::uint64_t colors,
                            const Coloring& coloring) {
  if (colors == 0) throw Error("need at least one color");
  if (!t.is_uniform()) throw Error("tree is not uniform; uniformize it first");
  for (const auto& node : t.interior()) {
    if (b(node) == 0) throw Error("branching bound must be positive at " + format_node(node));
  }
  for (const auto& leaf : t.leaves()) {
    auto it = coloring.find(leaf);
    if (it == coloring.end()) throw Error("leaf " + format_node(leaf) + " has no color");
    if (it->second >= colors) {
      throw Error("leaf " + format_node(leaf) + " has color " + std::to_string(it->second) +
                  " outside " + std::to_string(colors));
    }
  }
}

}  // namespace

std::string format_node(const Node& node) {
  std::string out = "[";
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(node[i]);
  }
  return out + "]";
}

Node parse_node(std::string_view text) {
  TermReader r(text);
  r.skip_spaces();
  const Terms items = r.term_list('[', ']');
  r.skip_spaces();
  if (!r.at_end()) r.fail("trailing text after node");
  Node out;
  for (const auto& item : items) {
    if (!item.is_nat()) throw Error("node letters must be numbers: " + std::string(text));
    out.push_back(item.as_nat());
  }
  return out;
}

Tree::Tree() : nodes_{Node{}} {}

Tree::Tree(std::set<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error("a tree needs a root");
  for (const auto& node : nodes_) {
    if (!node.empty() && !nodes_.count(Node(node.begin(), node.end() - 1))) {
      throw Error("tree is not prefix-closed at " + format_node(node));
    }
  }
}

std::vector<std::uint64_t> Tree::successors(const Node& node) const {
  std::vector<std::uint64_t> out;
  // Children follow the node directly in lexicographic order, interleaved
  // with their descendants.
  for (auto it = nodes_.upper_bound(node); it != nodes_.end(); ++it) {
    if (it->size() <= node.size() || !std::equal(node.begin(), node.end(), it->begin())) {
      break;
    }
    if (it->size() == node.size() + 1) out.push_back(it->back());
  }
  return out;
}

bool Tree::is_leaf(const Node& node) const {
  auto it = nodes_.upper_bound(node);
  return it == nodes_.end() || it->size() <= node.size() ||
         !std::equal(node.begin(), node.end(), it->begin());
}

std::vector<Node> Tree::leaves() const {
  std::vector<Node> out;
  for (const auto& node : nodes_) {
    if (is_leaf(node)) out.push_back(node);
  }
  return out;
}

std::vector<Node> Tree::interior() const {
  std::vector<Node> out;
  for (const auto& node : nodes_) {
    if (!is_leaf(node)) out.push_back(node);
  }
  return out;
}

std::size_t Tree::height() const {
  std::size_t h = 0;
  for (const auto& node : nodes_) h = std::max(h, node.size());
  return h;
}

bool Tree::is_uniform() const {
  const std::size_t h = height();
  for (const auto& leaf : leaves()) {
    if (leaf.size() != h) return false;
  }
  return true;
}

bool Tree::subtree_of(const Tree& other) const {
  return std::includes(other.nodes_.begin(), other.nodes_.end(), nodes_.begin(),
                       nodes_.end());
}

std::string Tree::str() const {
  std::string out;
  for (const auto& node : nodes_) out += format_node(node) + "\n";
  return out;
}

Tree Tree::parse(std::string_view text) {
  std::set<Node> nodes;
  for (const auto& line : lines_of(text)) nodes.insert(parse_node(line));
  return Tree(std::move(nodes));
}

std::string format_coloring(const Coloring& coloring) {
  std::string out;
  for (const auto& [leaf, color] : coloring) {
    out += format_node(leaf) + ": " + std::to_string(color) + "\n";
  }
  return out;
}

Coloring parse_coloring(std::string_view text) {
  Coloring out;
  for (const auto& line : lines_of(text)) {
    const auto colon = line.rfind(':');
    if (colon == std::string::npos) throw Error("coloring line without ':': " + line);
    TermReader r(std::string_view(line).substr(colon + 1));
    r.skip_spaces();
    const Term color = r.term();
    r.skip_spaces();
    if (!r.at_end() || !color.is_nat()) throw Error("bad color in: " + line);
    if (!out.emplace(parse_node(line.substr(0, colon)), color.as_nat()).second) {
      throw Error("leaf colored twice: " + line);
    }
  }
  return out;
}

BranchingBound constant_bound(std::uint64_t b) {
  return [b](const Node&) { return b; };
}

BranchingBound bound_from_map(std::map<Node, std::uint64_t> values) {
  return [values = std::move(values)](const Node& node) {
    auto it = values.find(node);
    if (it == values.end()) throw Error("branching bound undefined at " + format_node(node));
    return it->second;
  };
}

BranchingBound scaled(BranchingBound b, std::uint64_t factor) {
  return [b = std::move(b), factor](const Node& node) { return factor * b(node); };
}

bool is_fat(const Tree& t, const BranchingBound& b) {
  for (const auto& node : t.interior()) {
    if (t.successors(node).size() < b(node)) return false;
  }
  return true;
}

std::size_t rank(const Tree& t) {
  // Deepest descent below the root.
  return t.height();
}

Tree full_tree(std::uint64_t branching, std::size_t height) {
  return bounded_strings(constant_bound(branching), 1, height);
}

Tree bounded_strings(const BranchingBound& b, std::uint64_t factor, std::size_t height) {
  std::set<Node> nodes{Node{}};
  std::vector<Node> frontier{Node{}};
  for (std::size_t k = 0; k < height; ++k) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      const std::uint64_t width = factor * b(node);
      for (std::uint64_t n = 0; n < width; ++n) {
        next.push_back(child(node, n));
        nodes.insert(next.back());
      }
    }
    frontier = std::move(next);
  }
  return Tree(std::move(nodes));
}

ColoredTree uniformize(const Tree& t, const Coloring& coloring, std::uint64_t branching) {
  if (branching == 0) throw Error("padding needs positive branching");
  const std::size_t h = t.height();
  std::set<Node> nodes = t.nodes();
  Coloring colors;
  for (const auto& leaf : t.leaves()) {
    auto it = coloring.find(leaf);
    if (it == coloring.end()) throw Error("leaf " + format_node(leaf) + " has no color");
    std::vector<Node> frontier{leaf};
    for (std::size_t k = leaf.size(); k < h; ++k) {
      std::vector<Node> next;
      for (const auto& node : frontier) {
        for (std::uint64_t n = 0; n < branching; ++n) {
          next.push_back(child(node, n));
          nodes.insert(next.back());
        }
      }
      frontier = std::move(next);
    }
    for (const auto& node : frontier) colors[node] = it->second;
  }
  return {Tree(std::move(nodes)), std::move(colors)};
}

Monochromatic extract_monochromatic(const Tree& t, const BranchingBound& b,
                                    std::uint64_t colors, const Coloring& coloring) {
  check_extraction_input(t, b, colors, coloring);
  if (!is_fat(t, scaled(b, colors))) throw Error("tree is not fat enough for extraction");
  return extract(t, b, coloring);
}

Monochromatic cenzer_hinman(const Tree& t, std::uint64_t m, std::uint64_t colors,
                            const Coloring& coloring) {
  const BranchingBound b = constant_bound(m + 1);
  check_extraction_input(t, b, colors, coloring);
  if (!is_fat(t, constant_bound(m * colors + 1))) {
    throw Error("tree is not " + std::to_string(m * colors + 1) + "-fat");
  }
  return extract(t, b, coloring);
}

}  // namespace ltw
