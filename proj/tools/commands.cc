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

#include "tools/commands.h"

#include <signal.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "httplib.h"
#include "pennies/arena.h"
#include "pennies/errors.h"
#include "pennies/http_api.h"
#include "pennies/service.h"
#include "pennies/transcript_io.h"

namespace pennies::cli {
namespace {

namespace fs = std::filesystem;

std::string Trimmed(std::string s) {
  auto space = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), space));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), space).base(), s.end());
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<Decision> ParseKey(const std::string& key) {
  if (key == "l" || key == "left" || key == "0") return Decision::kLeft;
  if (key == "r" || key == "right" || key == "1") return Decision::kRight;
  return std::nullopt;
}

std::string Signed(int v) { return (v > 0 ? "+" : "") + std::to_string(v); }

void WriteFile(const fs::path& path, const auto& writer) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  writer(os);
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

int RunPlay(const PlayOptions& opts, std::istream& in, std::ostream& out,
            std::ostream& err) {
  std::uint64_t seed = 0;
  if (opts.seed) {
    seed = *opts.seed;
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    out << "seed: " << seed << '\n';
  }
  StoreOptions store_opts;
  store_opts.id_generator = [seed] { return "play-" + std::to_string(seed); };
  SessionStore store(store_opts);
  SessionOptions so;
  so.mode = ParseSessionMode(opts.mode);
  so.rounds = opts.rounds;
  so.seed = seed;
  so.theta = opts.theta;
  const SessionView view = store.Create(so);
  const int runs = view.runs;
  if (runs > 1) {
    out << "You will play " << runs << " games of " << opts.rounds
        << " rounds; the AI strategy of each is revealed at the end.\n";
  }
  out << "You win a round when your choice matches the AI's.\n";

  RoundResult r;
  do {
    out << "Game " << r.run + (r.run_complete ? 2 : 1) << ", round "
        << (r.run_complete ? 1 : r.round_index + 1) << "/" << opts.rounds
        << " [l/r, q to quit]: " << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      err << "\nerror: input ended before the game finished\n";
      return kExitRuntime;
    }
    const std::string key = Trimmed(line);
    if (key == "q" || key == "quit") {
      err << "game abandoned; no transcript written\n";
      return kExitRuntime;
    }
    const std::optional<Decision> choice = ParseKey(key);
    if (!choice) {
      out << "invalid key '" << key << "': enter l (left) or r (right)\n";
      continue;
    }
    r = store.Submit(view.id, *choice);
    out << "you " << DecisionName(r.human) << ", AI " << DecisionName(r.ai)
        << ": you " << (r.r1 == Payoff::kWin ? "win" : "lose") << " ("
        << Signed(ToInt(r.r1)) << "), total " << Signed(r.cumulative_human)
        << '\n';
    if (r.run_complete && !r.session_complete) {
      out << "Game " << r.run + 1 << " finished with total "
          << Signed(r.cumulative_human) << ".\n";
    }
  } while (!r.session_complete);

  const auto transcripts = store.GetTranscripts(view.id);
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    const int total = CumulativePayoff(transcripts[i], Player::kHuman).back();
    out << "Final total";
    if (runs > 1) {
      out << " (game " << i + 1 << ", "
          << StrategyName(transcripts[i].config.ai) << " AI)";
    }
    out << ": " << Signed(total) << '\n';
  }
  ExportTranscripts(opts.out, transcripts);
  out << "transcript written to " << opts.out.string() << '\n';
  return kExitOk;
}

int RunSimulate(const SimulateOptions& opts, std::ostream& out,
                std::ostream& err) {
  MatchSetup setup;
  setup.ai = ParseStrategyKind(opts.ai);
  setup.theta = opts.theta;
  setup.grid = QGrid::Parse(opts.q_grid);
  setup.rounds = opts.rounds;
  if (opts.opponent == "fake-human") {
    setup.opponent = OpponentSpec::FakeHumanSpec(opts.theta);
  } else {
    const std::string path = opts.opponent.substr(std::string("replay:").size());
    std::vector<Transcript> source;
    try {
      source = ImportTranscripts(path);
    } catch (const std::exception& e) {
      err << "error: cannot read replay transcript: " << e.what() << '\n';
      return kExitRuntime;
    }
    if (source.empty()) {
      err << "error: no transcript in " << path << '\n';
      return kExitRuntime;
    }
    std::vector<Decision> moves;
    for (const RoundRecord& rec : source.front().records) moves.push_back(rec.u1);
    setup.opponent = OpponentSpec::Replay(std::move(moves), path);
  }

  const ExperimentResult res =
      RunExperiment(opts.n, setup, opts.seed, opts.hist_width, opts.threads);

  fs::create_directories(opts.out);
  WriteFile(opts.out / "transcripts.txt",
            [&](std::ostream& os) { WriteTranscripts(os, res.transcripts); });
  WriteFile(opts.out / "summary.csv",
            [&](std::ostream& os) { WriteSummaryTable(os, res.summary); });
  WriteFile(opts.out / "histogram.csv",
            [&](std::ostream& os) { WriteHistogramTable(os, res.summary); });

  const ExperimentSummary& s = res.summary;
  out << "matches: " << s.matches << '\n'
      << "ai wins: " << s.ai_wins << ", human wins: " << s.human_wins
      << ", draws: " << s.draws << '\n'
      << "final ai mean: " << s.ai_mean.back() << " +/- "
      << s.ai_half_width.back() << '\n'
      << "wrote " << (opts.out / "transcripts.txt").string() << ", "
      << (opts.out / "summary.csv").string() << ", "
      << (opts.out / "histogram.csv").string() << '\n';
  return kExitOk;
}

int RunAnalyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(opts.in)) {
    err << "error: not a directory: " << opts.in.string() << '\n';
    return kExitRuntime;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opts.in)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Transcript> transcripts;
  for (const fs::path& f : files) {
    auto more = ImportTranscripts(f);
    transcripts.insert(transcripts.end(), std::make_move_iterator(more.begin()),
                       std::make_move_iterator(more.end()));
  }
  if (transcripts.empty()) {
    err << "error: no transcripts found in " << opts.in.string() << '\n';
    return kExitRuntime;
  }
  const ExperimentSummary s = Summarize(transcripts, opts.hist_width);
  const double n = static_cast<double>(s.matches);
  out << "matches: " << s.matches << '\n'
      << "rounds: " << s.rounds << '\n'
      << "ai wins: " << s.ai_wins << " (" << s.ai_wins / n << ")\n"
      << "human wins: " << s.human_wins << " (" << s.human_wins / n << ")\n"
      << "draws: " << s.draws << " (" << s.draws / n << ")\n"
      << "final ai mean: " << s.ai_mean.back() << " +/- "
      << s.ai_half_width.back() << '\n';
  out << "human final payoff histogram (width " << s.human_final.width << "):\n";
  const Histogram& h = s.human_final;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    if (h.counts[k] == 0) continue;
    out << "  [" << h.edges[k] << ", " << h.edges[k + 1] << "): " << h.counts[k]
        << '\n';
  }
  if (opts.summary_out) {
    WriteFile(*opts.summary_out,
              [&](std::ostream& os) { WriteSummaryTable(os, s); });
  }
  if (opts.histogram_out) {
    WriteFile(*opts.histogram_out,
              [&](std::ostream& os) { WriteHistogramTable(os, s); });
  }
  return kExitOk;
}

int RunServe(const ServeOptions& opts, std::ostream& out, std::ostream& err) {
  // Signals are taken synchronously by a watcher thread; block them here so
  // every thread started below inherits the mask.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  StoreOptions store_opts;
  store_opts.data_dir = opts.data_dir;
  SessionStore store(store_opts);

  httplib::Server server;
  // Address reuse only: a port held by another process must fail to bind.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  RegisterRoutes(server, store);
  int port = opts.port;
  if (port == 0) {
    port = server.bind_to_any_port(opts.host);
  } else if (!server.bind_to_port(opts.host, port)) {
    port = -1;
  }
  if (port <= 0) {
    err << "error: cannot listen on " << opts.host << ":" << opts.port << '\n';
    return kExitRuntime;
  }
  out << "listening on http://" << opts.host << ":" << port << '\n'
      << "data dir: " << opts.data_dir.string() << '\n'
      << std::flush;

  std::atomic<bool> done{false};
  std::mutex mu;
  std::condition_variable cv;

  std::jthread watcher([&] {
    const timespec tick{0, 200'000'000};
    while (!done) {
      if (sigtimedwait(&stop_signals, nullptr, &tick) > 0) {
        server.stop();
        return;
      }
    }
  });
  std::jthread reaper([&] {
    const auto idle = std::chrono::seconds(opts.idle_timeout_s);
    const auto period = std::clamp<std::chrono::milliseconds>(
        idle / 4, std::chrono::seconds(1), std::chrono::seconds(60));
    std::unique_lock lock(mu);
    while (!cv.wait_for(lock, period, [&] { return done.load(); })) {
      store.ExpireIdle(idle);
    }
  });

  const bool ok = server.listen_after_bind();
  {
    std::lock_guard lock(mu);
    done = true;
  }
  cv.notify_all();
  watcher.join();
  reaper.join();
  out << "shut down\n" << std::flush;
  return ok ? kExitOk : kExitRuntime;
}

}  // namespace pennies::cli
