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

#include "ltw/catalog/prob_error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ltw/catalog/error_theorem.hpp"
#include "ltw/combinators.hpp"

namespace ltw {
namespace {

std::size_t strings(int oracle_bits) { return std::size_t{1} << oracle_bits; }

bool qualifies(std::size_t size, int oracle_bits, std::uint64_t p, std::uint64_t q) {
  return size * q >= strings(oracle_bits) * (q - p);
}

std::string params(int t, std::uint64_t p, std::uint64_t q) {
  return "(" + std::to_string(t) + "," + std::to_string(p) + "/" + std::to_string(q) + ")";
}

std::uint64_t scale_for(std::uint64_t count, std::uint64_t total, std::uint64_t q) {
  return total / std::gcd(total, q * count);
}

}  // namespace

std::vector<Term> staged_machines(int oracle_bits, std::uint64_t q, int stage_bound) {
  if (oracle_bits < 0 || oracle_bits > 4 || stage_bound < 1) {
    throw Error("staged_machines: oracle bits in 0..4 and a positive stage bound");
  }
  // Per oracle string: never, or (first stage, value).
  std::vector<std::vector<std::uint64_t>> rows{std::vector<std::uint64_t>(stage_bound, kNever)};
  for (int first = 1; first <= stage_bound; ++first) {
    for (std::uint64_t v = 0; v < q; ++v) {
      std::vector<std::uint64_t> row(stage_bound, kNever);
      for (int s = first; s <= stage_bound; ++s) row[s - 1] = v;
      rows.push_back(row);
    }
  }
  const std::size_t n = strings(oracle_bits);
  std::vector<Term> out;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<std::vector<std::uint64_t>> machine;
    for (auto i : pick) machine.push_back(rows[i]);
    out.push_back(Term::machine(machine));
    std::size_t i = 0;
    while (i < n && ++pick[i] == rows.size()) pick[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

BilayerFn prob_error(int oracle_bits, std::uint64_t p, std::uint64_t q, int stage_bound) {
  if (p == 0 || p > q) throw Error("prob_error needs 0 < p <= q");
  const std::size_t n = strings(oracle_bits);
  CellTable cells;
  for (const auto& machine : staged_machines(oracle_bits, q, stage_bound)) {
    std::vector<std::uint64_t> valued;
    for (std::size_t a = 0; a < n; ++a) {
      if (machine.machine_entry(a, stage_bound) != kNever) valued.push_back(a);
    }
    SecretRow row;
    for (std::size_t size = 1; size <= valued.size(); ++size) {
      if (!qualifies(size, oracle_bits, p, q)) continue;
      for (const auto& pick : subsets(valued.size(), size)) {
        std::vector<std::uint64_t> set;
        ValueSet values;
        for (auto i : pick) {
          set.push_back(valued[i]);
          values.insert(Term::nat(machine.machine_entry(valued[i], stage_bound)));
        }
        row.emplace(Term::set(set), std::move(values));
      }
    }
    if (!row.empty()) cells.emplace(machine, std::move(row));
  }
  return BilayerFn("prob_error" + params(oracle_bits, p, q), std::move(cells), nat_range(q));
}

std::set<std::uint64_t> stage_scales(int oracle_bits, std::uint64_t q) {
  std::set<std::uint64_t> out;
  const std::uint64_t total = strings(oracle_bits);
  for (std::uint64_t c = 0; c <= total; ++c) out.insert(scale_for(c, total, q));
  return out;
}

BilayerFn stage_target(int oracle_bits, std::uint64_t p, std::uint64_t q) {
  std::map<std::uint64_t, BilayerFn> parts;
  for (auto r : stage_scales(oracle_bits, q)) parts.emplace(r, error(p * r, q * r));
  return sum(parts, "stage_target" + params(oracle_bits, p, q));
}

StageBlocks stage_blocks(const Term& machine, std::uint64_t q, int stage) {
  const std::uint64_t total = strings(machine.machine_oracle_bits());
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::size_t a = 0; a < total; ++a) {
    const std::uint64_t v = machine.machine_entry(a, stage);
    if (v != kNever) ++counts[v];
  }
  StageBlocks out;
  for (const auto& [v, c] : counts) out.scale = std::max(out.scale, scale_for(c, total, q));
  std::uint64_t next = 0;
  for (const auto& [v, c] : counts) {
    const std::uint64_t width = c * q * out.scale / total;
    out.blocks.push_back({v, next, next + width});
    next += width;
  }
  return out;
}

std::vector<std::uint64_t> stage_secret(const Term& machine, const Term& secret,
                                        std::uint64_t p, std::uint64_t q, int stage) {
  const StageBlocks sb = stage_blocks(machine, q, stage);
  const auto& in_a = secret.elems();
  bool pending_in_a = false;
  std::set<std::uint64_t> values_on_a;
  for (auto a : in_a) {
    const std::uint64_t v = machine.machine_entry(a, stage);
    if (v == kNever) {
      pending_in_a = true;
    } else {
      values_on_a.insert(v);
    }
  }
  std::vector<std::uint64_t> wrong;
  std::uint64_t covered = 0;
  for (const auto& b : sb.blocks) {
    if (!values_on_a.count(b.value)) {
      for (auto i = b.begin; i < b.end; ++i) wrong.push_back(i);
    }
    covered = b.end;
  }
  if (!pending_in_a) {
    for (auto i = covered; i < q * sb.scale; ++i) wrong.push_back(i);
  }
  const std::uint64_t allowed = p * sb.scale;
  if (wrong.size() > allowed) {
    throw Error("stage " + std::to_string(stage) + ": " + std::to_string(wrong.size()) +
                " forced indices exceed " + std::to_string(allowed));
  }
  std::sort(wrong.begin(), wrong.end());
  for (std::uint64_t i = 0; wrong.size() < allowed; ++i) {
    if (!std::binary_search(wrong.begin(), wrong.end(), i)) {
      wrong.insert(std::lower_bound(wrong.begin(), wrong.end(), i), i);
    }
  }
  return wrong;
}

Witness stage_strategy(int oracle_bits, std::uint64_t p, std::uint64_t q, int stage_bound) {
  Witness w;
  w.arthur = arthur_from_fn(
      [q, stage_bound](const Term& machine, const Terms& answers) -> std::optional<ArthurMove> {
        const int stage = static_cast<int>(answers.size());
        if (stage > 0) {
          const Term& u = answers.back();
          if (!u.is_nat()) return std::nullopt;
          for (const auto& b : stage_blocks(machine, q, stage).blocks) {
            if (b.begin <= u.as_nat() && u.as_nat() < b.end) {
              return ArthurMove::terminate(Term::nat(b.value));
            }
          }
        }
        if (stage >= stage_bound) return std::nullopt;
        const StageBlocks next = stage_blocks(machine, q, stage + 1);
        return ArthurMove::query(Term::tuple({Term::nat(next.scale), Term::unit()}));
      });
  w.nimue = nimue_from_fn([p, q](const Term& machine, const Term& secret, const Terms& answers,
                                 const Term&) -> std::optional<Term> {
    const int stage = static_cast<int>(answers.size()) + 1;
    return Term::set(stage_secret(machine, secret, p, q, stage));
  });
  w.depth = stage_bound;
  w.label = "stage_strategy" + params(oracle_bits, p, q);
  return w;
}

Witness prob_error_strategy(int oracle_bits, std::uint64_t p, std::uint64_t q,
                            int stage_bound) {
  if (p == 0 || p >= q) throw Error("prob_error_strategy needs 0 < p < q");
  std::map<std::uint64_t, Witness> parts;
  for (auto r : stage_scales(oracle_bits, q)) {
    Witness chain = collapse_chain(p * r, q * r);
    if (p > 1) chain = compose(chain, lift(easy_direction(p, q, ceil_div(q, p))));
    parts.emplace(r, std::move(chain));
  }
  Witness w = compose(stage_strategy(oracle_bits, p, q, stage_bound), sum_witness(parts));
  w.label = "prob_error_strategy" + params(oracle_bits, p, q);
  return w;
}

ReductionTriple error_to_prob_error(int oracle_bits, std::uint64_t p, std::uint64_t q,
                                    int stage_bound) {
  const std::uint64_t total = strings(oracle_bits);
  if (q == 0 || total % q != 0) throw Error("error_to_prob_error needs q | 2^T");
  std::vector<std::vector<std::uint64_t>> rows;
  for (std::uint64_t a = 0; a < total; ++a) rows.emplace_back(stage_bound, a * q / total);
  const Term bucket = Term::machine(rows);
  ReductionTriple t;
  t.label = "error_to_prob_error" + params(oracle_bits, p, q);
  t.query = [bucket](const Term&) { return std::optional<Term>(bucket); };
  t.secret = [total, q](const Term&, const Term& wrong) -> std::optional<Term> {
    std::vector<std::uint64_t> a_set;
    for (std::uint64_t a = 0; a < total; ++a) {
      const auto& w = wrong.elems();
      if (std::find(w.begin(), w.end(), a * q / total) == w.end()) a_set.push_back(a);
    }
    return Term::set(a_set);
  };
  t.answer = [](const Term&, const Term& v) { return std::optional<Term>(v); };
  return t;
}

}  // namespace ltw
