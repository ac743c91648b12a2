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

// ltw: solve, verify and play reduction games from a workspace file.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ltw/cli/commands.hpp"
#include "ltw/cli/workspace.hpp"

namespace {

struct Options {
  std::string workspace;
  std::string source;
  std::string target;
  std::string strategy;
  std::vector<std::string> names;
  int depth = 1;
  std::optional<std::uint64_t> budget;
  std::string json_path;
  std::string dot_path;
  std::string transcript_path;
  std::uint64_t seed = 1;
  int plays = 100;
  bool depth_given = false;
};

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ltw::Error("cannot write " + path);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ltw::Error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int emit(const ltw::Report& r, const Options& o, const ltw::Workspace& ws,
         bool always_save_transcript) {
  if (o.json_path != "-" && !r.text.empty()) {
    std::cout << r.text << (r.text.ends_with('\n') ? "" : "\n");
  }
  if (!o.json_path.empty()) write_file(o.json_path, r.json);
  if (!o.dot_path.empty()) write_file(o.dot_path, r.dot);
  if (r.transcript && (always_save_transcript || !r.transcript->outcome.arthur_nimue_win())) {
    const std::string path = ltw::save_transcript(*r.transcript, o.transcript_path, ws.output_dir);
    std::cerr << "transcript saved to " << path << "\n";
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction games between bilayer functions"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("workspace", o.workspace, "Workspace file")->required();
    sub->add_option("--json", o.json_path, "Write the JSON report here ('-' for stdout)");
  };
  auto add_pair = [&o](CLI::App* sub) {
    sub->add_option("source", o.source, "Function being solved")->required();
    sub->add_option("target", o.target, "Function being queried")->required();
  };

  auto* solve = app.add_subcommand("solve", "Search for an Arthur-Nimue winner of G(source, target)");
  add_common(solve);
  add_pair(solve);
  solve->add_option("--depth", o.depth, "Maximum number of queries")->check(CLI::PositiveNumber);
  solve->add_option("--budget", o.budget, "Search node budget");

  auto* oq = app.add_subcommand("oq", "Search for a one-query reduction triple");
  add_common(oq);
  add_pair(oq);
  oq->add_option("--budget", o.budget, "Search node budget");

  auto* verify = app.add_subcommand(
      "verify", "Check a named strategy against every Merlin, or replay a transcript");
  add_common(verify);
  add_pair(verify);
  verify->add_option("strategy", o.strategy, "Strategy name from the workspace");
  verify->add_option("--depth", o.depth, "Override the strategy's depth")
      ->check(CLI::PositiveNumber);
  verify->add_option("--transcript", o.transcript_path,
                     "Without a strategy: replay this file. With one: save the counter play here");

  auto* poset_cmd = app.add_subcommand("poset", "Pairwise reductions and their Hasse diagram");
  add_common(poset_cmd);
  poset_cmd->add_option("names", o.names, "Function names")->required();
  poset_cmd->add_option("--depth", o.depth, "Maximum number of queries")
      ->check(CLI::PositiveNumber);
  poset_cmd->add_option("--budget", o.budget, "Search node budget per pair");
  poset_cmd->add_option("--dot", o.dot_path, "Write the DOT graph here ('-' for stdout)");

  auto* play_cmd = app.add_subcommand("play", "Play Merlin against a strategy on the terminal");
  add_common(play_cmd);
  add_pair(play_cmd);
  play_cmd->add_option("strategy", o.strategy, "Strategy name; solved at --depth when omitted");
  play_cmd->add_option("--depth", o.depth, "Depth used when solving")->check(CLI::PositiveNumber);
  play_cmd->add_option("--transcript", o.transcript_path, "Save the transcript here");

  auto* sample = app.add_subcommand("sample", "Random legal Merlin plays against a strategy");
  add_common(sample);
  add_pair(sample);
  sample->add_option("strategy", o.strategy, "Strategy name")->required();
  sample->add_option("--seed", o.seed, "Random seed");
  sample->add_option("--plays", o.plays, "Number of plays")->check(CLI::PositiveNumber);
  sample->add_option("--transcript", o.transcript_path, "Save a counter play here");

  auto* show = app.add_subcommand("show", "Print a function's table");
  show->add_option("workspace", o.workspace, "Workspace file")->required();
  show->add_option("name", o.source, "Function name")->required();

  auto* ctors = app.add_subcommand("constructors", "List workspace constructors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? ltw::kExitOk : ltw::kExitDiagnostic;
  }

  try {
    if (ctors->parsed()) {
      std::cout << "functions:";
      for (const auto& c : ltw::function_constructors()) std::cout << " " << c;
      std::cout << "\nstrategies:";
      for (const auto& c : ltw::strategy_constructors()) std::cout << " " << c;
      std::cout << "\n";
      return ltw::kExitOk;
    }
    const ltw::Workspace ws = ltw::load_workspace(o.workspace);
    if (show->parsed()) {
      std::cout << ws.function(o.source).str();
      return ltw::kExitOk;
    }
    if (solve->parsed()) return emit(ltw::cmd_solve(ws, o.source, o.target, o.depth, o.budget), o, ws, false);
    if (oq->parsed()) return emit(ltw::cmd_oq(ws, o.source, o.target, o.budget), o, ws, false);
    if (verify->parsed()) {
      if (o.strategy.empty()) {
        if (o.transcript_path.empty()) throw ltw::Error("verify needs a strategy or --transcript");
        return emit(ltw::cmd_replay(ws, o.source, o.target, read_file(o.transcript_path)), o, ws,
                    false);
      }
      std::optional<int> depth;
      if (verify->count("--depth")) depth = o.depth;
      return emit(ltw::cmd_verify(ws, o.source, o.target, o.strategy, depth), o, ws, false);
    }
    if (poset_cmd->parsed()) {
      ltw::Report r = ltw::cmd_poset(ws, o.names, o.depth, o.budget);
      if (!o.dot_path.empty() || o.json_path == "-") r.text.clear();
      return emit(r, o, ws, false);
    }
    if (sample->parsed()) {
      return emit(ltw::cmd_sample(ws, o.source, o.target, o.strategy, o.seed, o.plays), o, ws,
                  false);
    }
    if (play_cmd->parsed()) {
      return emit(ltw::cmd_play(ws, o.source, o.target, o.strategy, o.depth, std::cin, std::cout),
                  o, ws, true);
    }
  } catch (const std::exception& e) {
    std::cerr << "ltw: " << e.what() << "\n";
    return ltw::kExitDiagnostic;
  }
  return ltw::kExitDiagnostic;
}
