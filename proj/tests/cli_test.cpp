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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ltw/cli/commands.hpp"
#include "ltw/cli/workspace.hpp"

using namespace ltw;

namespace {

const char* kWorkspace =
    "# small catalog\n"
    "def id2 = id(2)\n"
    "def e12 = error(1,2)\n"
    "def e13 = error(1,3)\n"
    "def e14 = error(1,4)\n"
    "def e24 = error(2,4)\n"
    "def j = join(e13, error(1,2))\n"
    "strategy chain = collapse_chain(2,4)\n"
    "strategy t = oq(e13, e12)\n";

std::string diagnostic(const std::string& text) {
  try {
    parse_workspace(text, "ws");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

nlohmann::json parsed(const Report& r) { return nlohmann::json::parse(r.json); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ltw_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int run_tool(const std::string& args) {
  const int status = std::system((std::string(LTW_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("workspace definitions") {
  const Workspace ws = parse_workspace(kWorkspace);
  CHECK(ws.function("e13").row(Term::unit()).size() == 3);
  CHECK(ws.function("e13").name() == "e13");
  CHECK(ws.function("j").publics().size() == 2);
  CHECK(ws.strategy("chain").depth == 14);
  CHECK(ws.order.size() == 8);
  CHECK_THROWS_AS(ws.function("nope"), Error);
}

TEST_CASE("workspace diagnostics carry line and column") {
  CHECK(diagnostic("def bad = error(0,2)\n") ==
        "ws:1:11: error: error(0,2): requires 0 < m < k");
  CHECK(diagnostic("\ndef x = eror(1,2)\n") == "ws:2:9: unknown constructor eror");
  CHECK(diagnostic("def x = error(1)\n") == "ws:1:9: error takes 2 arguments, got 1");
  CHECK(diagnostic("def x = error(1,2)\ndef x = id(2)\n") == "ws:2:5: x is already defined");
  CHECK(diagnostic("def x = join(y, id(2))\n") == "ws:1:14: unknown function y");
  CHECK(diagnostic("def x = error(1,2\n") == "ws:1:18: expected ',' or ')'");
  CHECK(diagnostic("let x = id(2)\n").find("unknown keyword let") != std::string::npos);
  CHECK(diagnostic("strategy s = solve(error(1,2), error(1,3), 1)\n").find("no witness") !=
        std::string::npos);
  CHECK(parse_workspace("budget 77\noutput runs\n").budget == 77);
}

TEST_CASE("file tables load relative to the workspace") {
  const auto table = scratch("table.txt");
  std::ofstream(table) << error(1, 2).str();
  const auto path = scratch("files.ltw");
  std::ofstream(path) << "def t = file(\"table.txt\")\n";
  const Workspace ws = load_workspace(path.string());
  CHECK(ws.function("t").cells() == error(1, 2).cells());
}

TEST_CASE("solve, oq and verify reports") {
  const Workspace ws = parse_workspace(kWorkspace);
  const Report oq = cmd_oq(ws, "e13", "e12");
  CHECK(oq.exit_code == kExitOk);
  CHECK(parsed(oq)["verdict"] == "found");
  CHECK(parsed(oq)["witness"]["triple"].get<std::string>().find("secret * | {2} -> {0}") !=
        std::string::npos);

  const Report none = cmd_solve(ws, "e12", "e13", 3);
  CHECK(none.exit_code == kExitOk);
  CHECK(parsed(none)["verdict"] == "none");
  CHECK(parsed(none)["certificate"]["mode"] == "exhausted");

  const Report budget = cmd_solve(ws, "e12", "e13", 3, 5);
  CHECK(budget.exit_code == kExitInconclusive);
  CHECK(parsed(budget)["verdict"] == "inconclusive");

  const Report win = cmd_verify(ws, "e24", "e12", "chain");
  CHECK(win.exit_code == kExitOk);
  CHECK(parsed(win)["verdict"] == "winning");
  CHECK(parsed(win)["verification"]["plays"].get<int>() > 0);

  const Report lose = cmd_verify(ws, "e12", "e13", "t");
  CHECK(lose.exit_code == kExitDiagnostic);
  REQUIRE(lose.transcript);
  CHECK(cmd_replay(ws, "e12", "e13", lose.transcript->str()).exit_code == kExitOk);
}

TEST_CASE("poset command") {
  const Workspace ws = parse_workspace(kWorkspace);
  const Report r = cmd_poset(ws, {"id2", "e14", "e13", "e12"}, 2);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.dot.find("\"e12\" -> \"e13\"") != std::string::npos);
  CHECK(parsed(r)["matrix"].size() == 4);
  const Report single = cmd_poset(ws, {"e12"}, 1);
  CHECK(single.dot == "digraph {\n  \"e12\";\n}\n");
  CHECK_THROWS_AS(cmd_poset(ws, {"e12", "e12"}, 1), Error);
}

TEST_CASE("human Merlin sessions") {
  const Workspace ws = parse_workspace(kWorkspace);
  std::istringstream in("oops\n* | {2}\n0\n1\n");
  std::ostringstream out;
  const Report r = cmd_play(ws, "e13", "e12", "t", 1, in, out);
  REQUIRE(r.transcript);
  CHECK(r.transcript->outcome.kind == Outcome::Kind::kArthurNimueWin);
  CHECK(out.str().find("rule: Merlin's answer must lie in e12(* | {0}) = {1}") !=
        std::string::npos);
  CHECK(cmd_replay(ws, "e13", "e12", r.transcript->str()).exit_code == kExitOk);

  std::istringstream outside("* | {9}\n");
  const Report v = cmd_play(ws, "e13", "e12", "t", 1, outside, out);
  CHECK(v.transcript->outcome.kind == Outcome::Kind::kRuleViolation);
  CHECK(v.transcript->outcome.player == Player::kMerlin);

  // Every rule-abiding human loses against a solved strategy.
  for (const char* c : {"{0}", "{1}", "{2}"}) {
    for (const char* a : {"0", "1", "2"}) {
      std::istringstream moves(std::string("* | ") + c + "\n" + a + "\n0\n1\n0\n1\n");
      const Report p = cmd_play(ws, "e14", "e12", "", 2, moves, out);
      CHECK(p.transcript->outcome.arthur_nimue_win());
    }
  }
  std::istringstream cut("* | {0}\n");
  CHECK_THROWS_AS(cmd_play(ws, "e13", "e12", "t", 1, cut, out), Error);
}

TEST_CASE("transcripts are content addressed") {
  const Workspace ws = parse_workspace(kWorkspace);
  const Report lose = cmd_verify(ws, "e12", "e13", "t");
  const std::string name = transcript_filename(*lose.transcript);
  CHECK(name.size() == std::string("transcript-0123456789abcdef.txt").size());
  CHECK(name == transcript_filename(Transcript::parse(lose.transcript->str())));
  const auto dir = scratch("runs");
  const std::string path = save_transcript(*lose.transcript, "", dir.string());
  CHECK(std::filesystem::path(path).filename() == name);
}

TEST_CASE("sampling is deterministic in the seed") {
  const Workspace ws = parse_workspace(kWorkspace);
  const Report a = cmd_sample(ws, "e24", "e12", "chain", 9, 30);
  const Report b = cmd_sample(ws, "e24", "e12", "chain", 9, 30);
  CHECK(parsed(a)["outcomes"] == parsed(b)["outcomes"]);
  CHECK(parsed(a)["verdict"] == "no-counterexample");
  CHECK(cmd_sample(ws, "e12", "e13", "t", 9, 30).exit_code == kExitDiagnostic);
}

TEST_CASE("tool exit codes") {
  const auto path = scratch("tool.ltw");
  std::ofstream(path) << kWorkspace;
  const std::string ws = path.string();
  CHECK(run_tool("oq " + ws + " e13 e12") == 0);
  CHECK(run_tool("solve " + ws + " e12 e13 --depth 3 --budget 5") == 2);
  CHECK(run_tool("verify " + ws + " e12 e13 t --transcript " + scratch("t.txt").string()) == 1);
  CHECK(run_tool("solve " + ws + " e12 missing") == 1);
  CHECK(run_tool("frobnicate") == 1);
  CHECK(run_tool("constructors") == 0);
}
