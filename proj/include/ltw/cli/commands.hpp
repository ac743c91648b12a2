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

// Command implementations behind the ltw tool. Each returns a report; the
// tool decides where it goes.

#ifndef LTW_CLI_COMMANDS_HPP_
#define LTW_CLI_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ltw/cli/workspace.hpp"
#include "ltw/engine.hpp"

namespace ltw {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDiagnostic = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kReportSchemaVersion = 1;

struct Report {
  int exit_code = kExitOk;
  std::string json;  // pretty printed, trailing newline
  std::string text;  // short human summary
  std::string dot;   // poset only
  std::optional<Transcript> transcript;
};

Report cmd_solve(const Workspace& ws, const std::string& source, const std::string& target,
                 int depth, std::optional<std::uint64_t> budget = std::nullopt);
Report cmd_oq(const Workspace& ws, const std::string& source, const std::string& target,
              std::optional<std::uint64_t> budget = std::nullopt);
// Depth defaults to the strategy's own bound.
Report cmd_verify(const Workspace& ws, const std::string& source, const std::string& target,
                  const std::string& strategy, std::optional<int> depth = std::nullopt);
// Recomputes the outcome of a saved transcript.
Report cmd_replay(const Workspace& ws, const std::string& source, const std::string& target,
                  const std::string& transcript_text);
Report cmd_poset(const Workspace& ws, const std::vector<std::string>& names, int depth,
                 std::optional<std::uint64_t> budget = std::nullopt);
// Random legal Merlin plays against a strategy.
Report cmd_sample(const Workspace& ws, const std::string& source, const std::string& target,
                  const std::string& strategy, std::uint64_t seed, int plays);
// Human as Merlin on `in`. An empty strategy name solves for one at `depth`.
Report cmd_play(const Workspace& ws, const std::string& source, const std::string& target,
                const std::string& strategy, int depth, std::istream& in, std::ostream& out);

// transcript-<fnv1a64 hex>.txt
std::string transcript_filename(const Transcript& t);
// Writes to `path`, or to the content-addressed name under `dir` when `path`
// is empty. Returns the path written.
std::string save_transcript(const Transcript& t, const std::string& path,
                            const std::string& dir);

}  // namespace ltw

#endif  // LTW_CLI_COMMANDS_HPP_
