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

#ifndef LTW_CLOSURE_HPP_
#define LTW_CLOSURE_HPP_

#include <optional>

#include "ltw/bilayer.hpp"
#include "ltw/reduction.hpp"
#include "ltw/solver.hpp"
#include "ltw/strategy.hpp"

namespace ltw {

// Universal machine for h-relative computation, cut off at `depth` queries.
//
// Publics are Arthur tables for the restricted game on h (no first move,
// rows keyed by Merlin's answers), secrets are Nimue tables. A pair is in
// the domain when it wins every play within `depth` queries; its value is
// the set of termination values over all plays.
class ClosureFn {
 public:
  // Enumerates every table that is total on the histories Merlin can reach
  // and terminates with values from `values`.
  ClosureFn(const BilayerFn& h, int depth, ValueSet values,
            std::uint64_t budget = kDefaultBudget);

  const BilayerFn& fn() const { return fn_; }
  int depth() const { return depth_; }

  // Lazy membership for arbitrary codes; nullopt when the pair does not win.
  static std::optional<ValueSet> evaluate(const BilayerFn& h, int depth,
                                          const Term& arthur_code,
                                          const Term& nimue_code);

 private:
  BilayerFn fn_;
  int depth_;
};

// Specializes a winner of G(g, h) to a one-query reduction of g to the
// closure of h. The answer map is the identity on `values`.
TripleTable oq_from_lt(const BilayerFn& g, const BilayerFn& h, const Witness& w,
                       int depth, const ValueSet& values);

// Runs each query code as a sub-strategy against h and rewrites its
// termination values through the answer map.
Witness lt_from_oq(const BilayerFn& g, const ReductionTriple& t, int depth);

// validate_triple against the closure of h, evaluating cells lazily.
TripleCheck validate_triple_lazy(const BilayerFn& g, const BilayerFn& h, int depth,
                                 const ReductionTriple& t);

}  // namespace ltw

#endif  // LTW_CLOSURE_HPP_
