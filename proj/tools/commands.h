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

#ifndef PENNIES_TOOLS_COMMANDS_H_
#define PENNIES_TOOLS_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace pennies::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct PlayOptions {
  int rounds = 150;
  std::string mode = "proposed";
  double theta = 1.5;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "pennies-transcript.txt";
};

struct SimulateOptions {
  std::size_t n = 0;
  int rounds = 150;
  std::string ai = "proposed";
  std::string opponent = "fake-human";
  double theta = 1.5;
  std::string q_grid = "0.1,0.3,0.5,0.7,0.9";
  std::uint64_t seed = 0;
  std::filesystem::path out;
  unsigned threads = 0;
  int hist_width = 10;
};

struct AnalyzeOptions {
  std::filesystem::path in;
  int hist_width = 10;
  std::optional<std::filesystem::path> summary_out;
  std::optional<std::filesystem::path> histogram_out;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path data_dir;
  int idle_timeout_s = 1800;
};

// Each returns an exit code. Errors are reported on `err`.
int RunPlay(const PlayOptions& opts, std::istream& in, std::ostream& out,
            std::ostream& err);
int RunSimulate(const SimulateOptions& opts, std::ostream& out,
                std::ostream& err);
int RunAnalyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);
int RunServe(const ServeOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace pennies::cli

#endif  // PENNIES_TOOLS_COMMANDS_H_
