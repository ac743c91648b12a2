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

#include "ltw/catalog/density.hpp"

#include <algorithm>
#include <numeric>

namespace ltw {

Rational Rational::of(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw Error("zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational lower_density(const Term& periodic) {
  const std::string period = periodic.periodic_period();
  return Rational::of(std::count(period.begin(), period.end(), '1'), period.size());
}

std::vector<std::uint64_t> members_below(const Term& periodic, std::uint64_t limit) {
  const std::string prefix = periodic.periodic_prefix();
  const std::string period = periodic.periodic_period();
  std::vector<std::uint64_t> out;
  for (std::uint64_t y = 0; y < limit; ++y) {
    const char bit =
        y < prefix.size() ? prefix[y] : period[(y - prefix.size()) % period.size()];
    if (bit == '1') out.push_back(y);
  }
  return out;
}

BilayerFn denerror(std::uint64_t l) {
  if (l < 2) throw Error("denerror needs l >= 2");
  const std::uint64_t window = kDensityWindow * l;
  SecretRow row;
  std::vector<std::string> periods{std::string(l, '1')};
  for (std::uint64_t j = 0; j < l; ++j) {
    periods.push_back(std::string(l, '1'));
    periods.back()[j] = '0';
  }
  for (const auto& period : periods) {
    const Term secret = Term::periodic("", period);
    ValueSet values;
    for (auto y : members_below(secret, window)) values.insert(Term::nat(y));
    row.emplace(secret, std::move(values));
  }
  CellTable cells;
  cells.emplace(Term::unit(), std::move(row));
  return BilayerFn("denerror(" + std::to_string(l) + ")", std::move(cells), nat_range(window));
}

ReductionTriple denerror_reduction(std::uint64_t l) {
  if (l < 2) throw Error("denerror_reduction needs l >= 2");
  ReductionTriple t;
  t.label = "denerror_reduction(" + std::to_string(l) + ")";
  t.query = [](const Term&) { return std::optional<Term>(Term::unit()); };
  t.secret = [l](const Term&, const Term& wrong) -> std::optional<Term> {
    if (wrong.elems().size() != 1 || wrong.elems()[0] >= l) return std::nullopt;
    std::string period(l, '1');
    period[wrong.elems()[0]] = '0';
    return Term::periodic("", period);
  };
  t.answer = [l](const Term&, const Term& y) -> std::optional<Term> {
    if (!y.is_nat()) return std::nullopt;
    return Term::nat(y.as_nat() % l);
  };
  return t;
}

}  // namespace ltw
