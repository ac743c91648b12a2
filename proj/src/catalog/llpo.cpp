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

#include "ltw/catalog/llpo.hpp"

#include <algorithm>

namespace ltw {
namespace {

std::string stage_text(std::uint64_t s) { return s == kNever ? "never" : std::to_string(s); }

}  // namespace

ClockedTable ClockedTable::from_term(const Term& t) {
  if (t.kind() != Term::Kind::kStages) throw Error("not a clocked table: " + t.str());
  return ClockedTable{t.elems()};
}

std::vector<std::uint64_t> ClockedTable::halting() const {
  std::vector<std::uint64_t> out;
  for (std::size_t j = 0; j < stages.size(); ++j) {
    if (stages[j] != kNever) out.push_back(j);
  }
  return out;
}

std::string ClockedTable::str() const {
  std::string out = "stages: [";
  for (std::size_t j = 0; j < stages.size(); ++j) {
    if (j) out += ", ";
    out += stage_text(stages[j]);
  }
  return out + "]";
}

ClockedTable ClockedTable::parse(std::string_view text) {
  TermReader r(text);
  r.skip_spaces();
  r.expect("stages:");
  r.skip_spaces();
  r.expect("[");
  ClockedTable out;
  r.skip_spaces();
  if (!r.accept("]")) {
    while (true) {
      r.skip_spaces();
      if (r.accept("never")) {
        out.stages.push_back(kNever);
      } else {
        const std::uint64_t s = r.number();
        if (s == 0) r.fail("stages start at 1");
        out.stages.push_back(s);
      }
      r.skip_spaces();
      if (r.accept("]")) break;
      r.expect(",");
    }
  }
  r.skip_spaces();
  if (!r.at_end()) r.fail("trailing text after clocked table");
  return out;
}

std::vector<Term> clocked_tables(std::uint64_t k, std::uint64_t stage_bound,
                                 std::uint64_t max_halts) {
  std::vector<Term> out;
  std::vector<std::uint64_t> digits(k, 0);  // 0 means never
  while (true) {
    std::vector<std::uint64_t> stages;
    std::uint64_t halts = 0;
    for (auto d : digits) {
      stages.push_back(d == 0 ? kNever : d);
      if (d) ++halts;
    }
    if (halts <= max_halts) out.push_back(Term::stages(stages));
    std::size_t i = 0;
    while (i < k && ++digits[i] > stage_bound) digits[i++] = 0;
    if (i == k) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

BilayerFn llpo(std::uint64_t m, std::uint64_t k, std::uint64_t stage_bound) {
  if (m >= k) throw Error("llpo needs m < k");
  CellTable cells;
  for (const auto& t : clocked_tables(k, stage_bound, m)) {
    const ClockedTable table = ClockedTable::from_term(t);
    ValueSet values;
    for (std::size_t j = 0; j < k; ++j) {
      if (table.stages[j] == kNever) values.insert(Term::nat(j));
    }
    cells[t][Term::unit()] = std::move(values);
  }
  return BilayerFn("llpo(" + std::to_string(m) + "," + std::to_string(k) + ")",
                   std::move(cells), nat_range(k));
}

ReductionTriple llpo_reduction(std::uint64_t m, std::uint64_t k, std::uint64_t stage_bound) {
  if (m >= k) throw Error("llpo_reduction needs m < k");
  ReductionTriple t;
  t.label = "llpo_reduction(" + std::to_string(m) + "," + std::to_string(k) + ")";
  t.query = [](const Term&) { return std::optional<Term>(Term::unit()); };
  t.secret = [m, k](const Term& e, const Term&) -> std::optional<Term> {
    const ClockedTable table = ClockedTable::from_term(e);
    std::vector<std::uint64_t> wrong = table.halting();
    if (wrong.size() > m) return std::nullopt;
    if (wrong.size() < m) wrong.push_back(k);
    for (std::uint64_t j = 0; j < k && wrong.size() < m; ++j) {
      if (table.stages[j] == kNever) wrong.push_back(j);
    }
    return Term::set(wrong);
  };
  t.answer = [m, k, stage_bound](const Term& e, const Term& a) -> std::optional<Term> {
    if (!a.is_nat() || a.as_nat() > k) return std::nullopt;
    if (a.as_nat() < k) return a;
    // Wait for m halts, then answer the least index not seen halting.
    const ClockedProbe probe(e);
    for (std::uint64_t s = 1; s <= stage_bound; ++s) {
      std::vector<bool> seen(k);
      std::uint64_t count = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (probe.halted_by(j, s)) {
          seen[j] = true;
          ++count;
        }
      }
      if (count < m) continue;
      for (std::size_t j = 0; j < k; ++j) {
        if (!seen[j]) return Term::nat(j);
      }
    }
    return std::nullopt;
  };
  return t;
}

std::vector<std::uint64_t> psi_halting(const Term& table) {
  const ClockedTable t = ClockedTable::from_term(table);
  if (t.size() != 2) throw Error("the race program needs a two-entry table");
  const std::uint64_t t0 = t.stages[0];
  const std::uint64_t t1 = t.stages[1];
  std::vector<std::uint64_t> out;
  if (t0 != kNever && t1 >= t0) out.push_back(0);
  if (t1 != kNever && t0 > t1) out.push_back(1);
  if (out.size() > 1) throw Error("both race indices halt on " + table.str());
  return out;
}

ValueSet psi_values(const Term& table) {
  ValueSet out = nat_range(2);
  for (auto j : psi_halting(table)) out.erase(Term::nat(j));
  return out;
}

BilayerFn psi_fn(std::uint64_t stage_bound) {
  Multifunction f;
  for (const auto& t : clocked_tables(2, stage_bound, 2)) f.emplace(t, psi_values(t));
  BilayerFn out = hat(f, "race");
  return BilayerFn(out.name(), out.cells(), nat_range(2));
}

}  // namespace ltw
