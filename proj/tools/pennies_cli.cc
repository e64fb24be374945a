// Copyright 2026 The Pennies Authors
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

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "pennies/belief.h"
#include "tools/commands.h"

namespace {

using namespace pennies::cli;

const CLI::Validator kGrid(
    [](std::string& value) -> std::string {
      try {
        pennies::QGrid::Parse(value);
      } catch (const std::exception& e) {
        return e.what();
      }
      return {};
    },
    "GRID", "q grid");

const CLI::Validator kOpponent(
    [](std::string& value) -> std::string {
      if (value == "fake-human") return {};
      if (value.rfind("replay:", 0) == 0 && value.size() > 7) return {};
      return "expected fake-human or replay:PATH";
    },
    "fake-human|replay:PATH", "opponent");

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated matching pennies against a level-k opponent model."};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 runtime error, 2 usage error.\n"
      "Environment: PENNIES_DATA_DIR sets the default serve --data-dir.");

  PlayOptions play;
  std::uint64_t play_seed = 0;
  auto* play_cmd = app.add_subcommand("play", "Play in the terminal.");
  play_cmd->add_option("--rounds", play.rounds, "Rounds per game")
      ->check(CLI::Range(1, 1'000'000))
      ->capture_default_str();
  play_cmd->add_option("--mode", play.mode, "AI strategy")
      ->check(CLI::IsMember({"proposed", "nash", "paired-study"}))
      ->capture_default_str();
  play_cmd->add_option("--theta", play.theta, "Softmax parameter of the AI")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* seed_opt =
      play_cmd->add_option("--seed", play_seed, "Seed (random when omitted)");
  play_cmd->add_option("--out", play.out, "Transcript file written at the end")
      ->capture_default_str();

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run matches against simulated opponents.");
  sim_cmd->add_option("--n", sim.n, "Number of matches")
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}));
  sim_cmd->add_option("--rounds", sim.rounds, "Rounds per match")
      ->check(CLI::Range(1, 1'000'000))
      ->capture_default_str();
  sim_cmd->add_option("--ai", sim.ai, "AI strategy")
      ->check(CLI::IsMember({"proposed", "nash"}))
      ->capture_default_str();
  sim_cmd->add_option("--opponent", sim.opponent, "fake-human or replay:PATH")
      ->check(kOpponent)
      ->capture_default_str();
  sim_cmd->add_option("--theta", sim.theta, "Softmax parameter (AI and fake human)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim_cmd->add_option("--q-grid", sim.q_grid, "Transition parameter grid")
      ->check(kGrid)
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Base seed; match i uses seed + i")
      ->required();
  sim_cmd->add_option("--out", sim.out, "Output directory")->required();
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0: all cores)")
      ->capture_default_str();
  sim_cmd->add_option("--hist-width", sim.hist_width, "Histogram bin width")
      ->check(CLI::Range(1, 1'000'000))
      ->capture_default_str();

  AnalyzeOptions an;
  std::string summary_out, histogram_out;
  auto* an_cmd = app.add_subcommand("analyze", "Summarize stored transcripts.");
  an_cmd->add_option("--in", an.in, "Directory of transcript files (*.txt)")
      ->required();
  an_cmd->add_option("--hist-width", an.hist_width, "Histogram bin width")
      ->check(CLI::Range(1, 1'000'000))
      ->capture_default_str();
  an_cmd->add_option("--summary-out", summary_out, "Write the summary table");
  an_cmd->add_option("--histogram-out", histogram_out, "Write the histogram table");

  ServeOptions serve;
  std::string data_dir = "pennies-data";
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP session service.");
  serve_cmd->add_option("--port", serve.port, "TCP port (0: any free port)")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--host", serve.host, "Bind address")
      ->capture_default_str();
  serve_cmd->add_option("--data-dir", data_dir, "Event log directory")
      ->envname("PENNIES_DATA_DIR")
      ->capture_default_str();
  serve_cmd->add_option("--idle-timeout", serve.idle_timeout_s,
                        "Seconds before an idle session expires")
      ->check(CLI::Range(1, 100'000'000))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*play_cmd) {
      if (*seed_opt) play.seed = play_seed;
      return RunPlay(play, std::cin, std::cout, std::cerr);
    }
    if (*sim_cmd) return RunSimulate(sim, std::cout, std::cerr);
    if (*an_cmd) {
      if (!summary_out.empty()) an.summary_out = summary_out;
      if (!histogram_out.empty()) an.histogram_out = histogram_out;
      return RunAnalyze(an, std::cout, std::cerr);
    }
    if (*serve_cmd) {
      serve.data_dir = data_dir;
      return RunServe(serve, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
