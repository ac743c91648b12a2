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

#ifndef LTW_COMBINATORS_HPP_
#define LTW_COMBINATORS_HPP_

#include <map>
#include <vector>

#include "ltw/bilayer.hpp"
#include "ltw/strategy.hpp"

namespace ltw {

// Publics inl n / inr n; secrets carry the same tag as their public.
BilayerFn join(const BilayerFn& f, const BilayerFn& g);
// Publics (m,n), secrets (c,d), values inl a for a in f(m|c), inr b for b in
// g(n|d).
BilayerFn meet(const BilayerFn& f, const BilayerFn& g);
// Cells (n|c) -> f(n) x g(*|c) as pairs. g must have the single public *.
BilayerFn pair(const Multifunction& f, const BilayerFn& g);
// Indexed disjoint union: public (i,n) with the secrets of parts[i] at n.
BilayerFn sum(const std::map<std::uint64_t, BilayerFn>& parts,
              std::string name = "sum");

// Chains a winner of G(f, g) with a winner of G(g, h) into a winner of
// G(f, h). Each outer query is answered by a nested play of the inner pair.
Witness compose(const Witness& outer, const Witness& inner);

// From winners of G(a, c) and G(b, c), a winner of G(join(a, b), c).
Witness join_witness(const Witness& left, const Witness& right);

// From winners of G(parts[i], c), a winner of G(sum(parts), c).
Witness sum_witness(const std::map<std::uint64_t, Witness>& parts);

}  // namespace ltw

#endif  // LTW_COMBINATORS_HPP_
