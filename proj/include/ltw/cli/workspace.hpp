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

// Workspace files: named functions and strategies built from constructors.
//
//   # comment
//   budget 1000000
//   output runs
//   def e13 = error(1,3)
//   def j = join(e13, error(1,2))
//   def f = file("table.txt")
//   strategy w = collapse_chain(2,4)
//   strategy s = solve(e13, error(1,2), 1)

#ifndef LTW_CLI_WORKSPACE_HPP_
#define LTW_CLI_WORKSPACE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ltw/bilayer.hpp"
#include "ltw/solver.hpp"
#include "ltw/strategy.hpp"

namespace ltw {

struct Workspace {
  std::map<std::string, BilayerFn> functions;
  std::map<std::string, Witness> strategies;
  std::vector<std::string> order;  // definition order, both kinds
  std::uint64_t budget = kDefaultBudget;
  std::string output_dir = ".";
  std::string base_dir = ".";  // for file("...") paths

  // Throw Error naming the missing definition.
  const BilayerFn& function(const std::string& name) const;
  const Witness& strategy(const std::string& name) const;
};

// Throws Error with "NAME:LINE:COLUMN: message" on the first problem.
Workspace parse_workspace(std::string_view text, std::string_view source = "<input>",
                          std::string base_dir = ".");
Workspace load_workspace(const std::string& path);

// Constructor names understood by `def` and `strategy`, with arities.
std::vector<std::string> function_constructors();
std::vector<std::string> strategy_constructors();

}  // namespace ltw

#endif  // LTW_CLI_WORKSPACE_HPP_
