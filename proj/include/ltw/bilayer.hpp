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

#ifndef LTW_BILAYER_HPP_
#define LTW_BILAYER_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ltw/term.hpp"

namespace ltw {

using ValueSet = std::set<Term>;
using SecretRow = std::map<Term, ValueSet>;
using CellTable = std::map<Term, SecretRow>;

// Finite partial multifunction on public inputs (no secret layer).
using Multifunction = std::map<Term, ValueSet>;

std::string format_values(const ValueSet& values);

// A finite table of cells (public | secret) -> set of values.
//
// Immutable after construction. An empty value set is a legal cell: it marks
// an input on which no answer is acceptable.
class BilayerFn {
 public:
  BilayerFn() = default;
  // Throws Error when the table is empty or a value is outside the alphabet.
  BilayerFn(std::string name, CellTable cells, ValueSet alphabet);

  const std::string& name() const { return name_; }
  const CellTable& cells() const { return cells_; }
  const ValueSet& alphabet() const { return alphabet_; }

  std::vector<Term> publics() const;
  // Secrets paired with `pub`, or empty when pub is outside the domain.
  const SecretRow& row(const Term& pub) const;
  bool has_public(const Term& pub) const { return cells_.count(pub) > 0; }
  bool contains(const Term& pub, const Term& secret) const;
  // nullptr when (pub|secret) is outside the domain.
  const ValueSet* cell(const Term& pub, const Term& secret) const;
  // Union of all cells at `pub`: every answer Merlin might give.
  ValueSet answers(const Term& pub) const;
  std::size_t size() const;

  BilayerFn renamed(std::string name) const;

  // Text form:
  //   bilayer NAME
  //   alphabet {0,1}
  //   * | {0} -> {1}
  std::string str() const;
  static BilayerFn parse(std::string_view text);

  friend bool operator==(const BilayerFn& a, const BilayerFn& b) {
    return a.name_ == b.name_ && a.cells_ == b.cells_ &&
           a.alphabet_ == b.alphabet_;
  }

 private:
  std::string name_;
  CellTable cells_;
  ValueSet alphabet_;
};

std::string format_cell(const Term& pub, const Term& secret,
                        const ValueSet& values);

// Treats each f(n) as the cell (n | *).
BilayerFn hat(const Multifunction& f, std::string name = "hat");
// Cells {0..universe-1} minus {g(n)}, full alphabet off dom(g).
BilayerFn avoid(const std::map<std::uint64_t, std::uint64_t>& g,
                std::uint64_t universe, std::uint64_t publics);
BilayerFn id_fn(std::uint64_t alphabet);
// k blocks, a secret m of which are wrong.
BilayerFn error(std::uint64_t m, std::uint64_t k);
// k blocks, the increasing tuple of hard positions is public, the secret is
// an m-tuple of hits. A normal block breaks on any hit, a hard block only
// when every hit lands on it.
BilayerFn error_hard(std::uint64_t m, std::uint64_t k, std::uint64_t n);
// Surviving blocks of error_hard for the given hard positions and hits.
ValueSet error_hard_survivors(std::uint64_t k, const std::vector<std::uint64_t>& hard,
                              const std::vector<std::uint64_t>& hits);
// Rejects repeated hard positions.
Term hard_positions(std::vector<std::uint64_t> positions);

std::vector<std::uint64_t> tuple_nats(const Term& t);
Term nat_tuple(const std::vector<std::uint64_t>& xs);
ValueSet nat_range(std::uint64_t n);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);
// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::uint64_t>> subsets(std::uint64_t n, std::uint64_t k);

}  // namespace ltw

#endif  // LTW_BILAYER_HPP_
