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

#include "ltw/bilayer.hpp"

#include <algorithm>
#include <sstream>

namespace ltw {

std::string format_values(const ValueSet& values) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ',';
    first = false;
    v.write(out);
  }
  out += '}';
  return out;
}

std::string format_cell(const Term& pub, const Term& secret,
                        const ValueSet& values) {
  std::string out;
  pub.write(out);
  out += " | ";
  secret.write(out);
  out += " -> ";
  out += format_values(values);
  return out;
}

BilayerFn::BilayerFn(std::string name, CellTable cells, ValueSet alphabet)
    : name_(std::move(name)),
      cells_(std::move(cells)),
      alphabet_(std::move(alphabet)) {
  for (auto it = cells_.begin(); it != cells_.end();) {
    it = it->second.empty() ? cells_.erase(it) : std::next(it);
  }
  if (cells_.empty()) throw Error(name_ + ": public domain is empty");
  for (const auto& [pub, row] : cells_) {
    for (const auto& [secret, values] : row) {
      for (const auto& v : values) {
        if (!alphabet_.count(v)) {
          throw Error(name_ + ": value " + v.str() + " at " +
                      format_cell(pub, secret, values) +
                      " is outside the alphabet");
        }
      }
    }
  }
}

std::vector<Term> BilayerFn::publics() const {
  std::vector<Term> out;
  out.reserve(cells_.size());
  for (const auto& entry : cells_) out.push_back(entry.first);
  return out;
}

const SecretRow& BilayerFn::row(const Term& pub) const {
  static const SecretRow kEmpty;
  auto it = cells_.find(pub);
  return it == cells_.end() ? kEmpty : it->second;
}

bool BilayerFn::contains(const Term& pub, const Term& secret) const {
  return cell(pub, secret) != nullptr;
}

const ValueSet* BilayerFn::cell(const Term& pub, const Term& secret) const {
  auto it = cells_.find(pub);
  if (it == cells_.end()) return nullptr;
  auto jt = it->second.find(secret);
  if (jt == it->second.end()) return nullptr;
  return &jt->second;
}

ValueSet BilayerFn::answers(const Term& pub) const {
  ValueSet out;
  for (const auto& [secret, values] : row(pub)) {
    out.insert(values.begin(), values.end());
  }
  return out;
}

std::size_t BilayerFn::size() const {
  std::size_t n = 0;
  for (const auto& entry : cells_) n += entry.second.size();
  return n;
}

BilayerFn BilayerFn::renamed(std::string name) const {
  BilayerFn out = *this;
  out.name_ = std::move(name);
  return out;
}

std::string BilayerFn::str() const {
  std::string out = "bilayer " + name_ + "\nalphabet " + format_values(alphabet_) + "\n";
  for (const auto& [pub, row] : cells_) {
    for (const auto& [secret, values] : row) {
      out += format_cell(pub, secret, values);
      out += '\n';
    }
  }
  return out;
}

BilayerFn BilayerFn::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string name;
  ValueSet alphabet;
  CellTable cells;
  bool have_alphabet = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    try {
      if (line.rfind("bilayer ", 0) == 0) {
        name = line.substr(8);
        continue;
      }
      TermReader reader(line);
      if (reader.accept("alphabet ")) {
        for (auto& v : reader.term_list('{', '}')) alphabet.insert(std::move(v));
        have_alphabet = true;
      } else {
        Term pub = reader.term();
        reader.skip_spaces();
        reader.expect("|");
        reader.skip_spaces();
        Term secret = reader.term();
        reader.skip_spaces();
        reader.expect("->");
        reader.skip_spaces();
        ValueSet values;
        for (auto& v : reader.term_list('{', '}')) values.insert(std::move(v));
        auto& row = cells[pub];
        if (row.count(secret)) reader.fail("duplicate cell");
        row.emplace(std::move(secret), std::move(values));
      }
      reader.skip_spaces();
      if (!reader.at_end()) reader.fail("trailing characters");
    } catch (const ParseError& e) {
      throw Error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_alphabet) {
    for (const auto& [pub, row] : cells) {
      for (const auto& [secret, values] : row) alphabet.insert(values.begin(), values.end());
    }
  }
  return BilayerFn(name, std::move(cells), std::move(alphabet));
}

std::vector<std::uint64_t> tuple_nats(const Term& t) {
  std::vector<std::uint64_t> out;
  for (const auto& item : t.items()) out.push_back(item.as_nat());
  return out;
}

Term nat_tuple(const std::vector<std::uint64_t>& xs) {
  std::vector<Term> items;
  items.reserve(xs.size());
  for (auto x : xs) items.push_back(Term::nat(x));
  return Term::tuple(std::move(items));
}

ValueSet nat_range(std::uint64_t n) {
  ValueSet out;
  for (std::uint64_t i = 0; i < n; ++i) out.insert(Term::nat(i));
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::vector<std::uint64_t>> subsets(std::uint64_t n,
                                                std::uint64_t k) {
  std::vector<std::vector<std::uint64_t>> out;
  if (k > n) return out;
  std::vector<std::uint64_t> cur(k);
  for (std::uint64_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) return out;
    ++cur[i];
    for (std::uint64_t j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

BilayerFn hat(const Multifunction& f, std::string name) {
  CellTable cells;
  ValueSet alphabet;
  for (const auto& [n, values] : f) {
    cells[n][Term::unit()] = values;
    alphabet.insert(values.begin(), values.end());
  }
  return BilayerFn(std::move(name), std::move(cells), std::move(alphabet));
}

BilayerFn avoid(const std::map<std::uint64_t, std::uint64_t>& g,
                std::uint64_t universe, std::uint64_t publics) {
  if (universe < 2) throw Error("avoid: universe must be at least 2");
  Multifunction f;
  for (std::uint64_t n = 0; n < publics; ++n) f[Term::nat(n)] = nat_range(universe);
  for (const auto& [n, v] : g) {
    if (v >= universe) throw Error("avoid: value outside the universe");
    auto& cell = f[Term::nat(n)];
    cell = nat_range(universe);
    cell.erase(Term::nat(v));
  }
  BilayerFn out = hat(f, "avoid(" + std::to_string(universe) + ")");
  return BilayerFn(out.name(), out.cells(), nat_range(universe));
}

BilayerFn id_fn(std::uint64_t alphabet) {
  if (alphabet < 1) throw Error("id_fn: alphabet must be nonempty");
  Multifunction f;
  for (std::uint64_t i = 0; i < alphabet; ++i) f[Term::nat(i)] = {Term::nat(i)};
  return hat(f, "id_fn(" + std::to_string(alphabet) + ")");
}

BilayerFn error(std::uint64_t m, std::uint64_t k) {
  if (m == 0 || m >= k) {
    throw Error("error(" + std::to_string(m) + "," + std::to_string(k) +
                "): requires 0 < m < k");
  }
  SecretRow row;
  for (const auto& wrong : subsets(k, m)) {
    ValueSet values = nat_range(k);
    for (auto w : wrong) values.erase(Term::nat(w));
    row.emplace(Term::set(wrong), std::move(values));
  }
  CellTable cells;
  cells.emplace(Term::unit(), std::move(row));
  return BilayerFn("error(" + std::to_string(m) + "," + std::to_string(k) + ")",
                   std::move(cells), nat_range(k));
}

ValueSet error_hard_survivors(std::uint64_t k,
                              const std::vector<std::uint64_t>& hard,
                              const std::vector<std::uint64_t>& hits) {
  ValueSet out;
  for (std::uint64_t a = 0; a < k; ++a) {
    const bool is_hard = std::find(hard.begin(), hard.end(), a) != hard.end();
    const bool hit = std::find(hits.begin(), hits.end(), a) != hits.end();
    const bool all_on_a =
        !hits.empty() &&
        std::all_of(hits.begin(), hits.end(), [a](auto c) { return c == a; });
    const bool broken = is_hard ? all_on_a : hit;
    if (!broken) out.insert(Term::nat(a));
  }
  return out;
}

Term hard_positions(std::vector<std::uint64_t> positions) {
  std::sort(positions.begin(), positions.end());
  if (std::adjacent_find(positions.begin(), positions.end()) != positions.end()) {
    throw Error("hard block positions must be distinct");
  }
  return nat_tuple(positions);
}

BilayerFn error_hard(std::uint64_t m, std::uint64_t k, std::uint64_t n) {
  if (m >= k || n > k) {
    throw Error("error_hard(" + std::to_string(m) + "," + std::to_string(k) +
                "," + std::to_string(n) + "): requires m < k and n <= k");
  }
  // All m-tuples over k, in lexicographic order.
  std::vector<std::vector<std::uint64_t>> hit_tuples;
  std::vector<std::uint64_t> cur(m, 0);
  while (true) {
    hit_tuples.push_back(cur);
    std::int64_t i = static_cast<std::int64_t>(m) - 1;
    while (i >= 0 && cur[i] == k - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  CellTable cells;
  for (const auto& hard : subsets(k, n)) {
    SecretRow row;
    for (const auto& hits : hit_tuples) {
      row.emplace(nat_tuple(hits), error_hard_survivors(k, hard, hits));
    }
    cells.emplace(nat_tuple(hard), std::move(row));
  }
  return BilayerFn("error_hard(" + std::to_string(m) + "," + std::to_string(k) +
                       "," + std::to_string(n) + ")",
                   std::move(cells), nat_range(k));
}

}  // namespace ltw
