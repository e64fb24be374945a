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

#ifndef PENNIES_SERVICE_H_
#define PENNIES_SERVICE_H_

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pennies/arena.h"
#include "pennies/belief.h"
#include "pennies/game.h"
#include "pennies/strategy.h"

// Live play against the AI. A session is one game (or, in paired-study
// mode, two linked games whose strategies are hidden from the player until
// both are complete). Every state change is appended to an event log before
// it is acknowledged; the log alone is enough to rebuild all sessions.

namespace pennies {

enum class SessionMode { kProposed, kNash, kPairedStudy };
enum class SessionStatus { kInProgress, kComplete, kExpired };

std::string_view SessionModeName(SessionMode mode);
// Throws DomainError.
SessionMode ParseSessionMode(std::string_view name);
std::string_view SessionStatusName(SessionStatus status);

class SessionError : public std::runtime_error {
 public:
  enum class Code { kNotFound, kValidation, kComplete, kNotComplete, kExpired,
                    kConflict };

  SessionError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

struct SessionOptions {
  SessionMode mode = SessionMode::kProposed;
  int rounds = 150;
  std::optional<std::uint64_t> seed;
  double theta = kDefaultTheta;
  QGrid grid = QGrid::Default();
};

struct RoundResult {
  Decision human = Decision::kLeft;
  Decision ai = Decision::kLeft;
  Payoff r1 = Payoff::kWin;
  // Human cumulative payoff in the current run after this round.
  int cumulative_human = 0;
  // Rounds completed in the current run (1 after the first move).
  int round_index = 0;
  int run = 0;
  int move = 0;
  bool run_complete = false;
  bool session_complete = false;
};

// What the player may see. `mode` is withheld for paired-study sessions
// until they complete.
struct SessionView {
  std::string id;
  std::string mode;
  SessionStatus status = SessionStatus::kInProgress;
  int rounds = 0;
  int runs = 1;
  int run = 0;
  int round_index = 0;
  std::vector<int> cumulative_human;
  std::optional<RoundDecisions> last;
};

// One game session. Not thread-safe; SessionStore serializes access.
class Session {
 public:
  Session(std::string id, const SessionOptions& options, std::uint64_t seed);

  const std::string& id() const { return id_; }
  SessionMode mode() const { return mode_; }
  SessionStatus status() const { return status_; }
  std::uint64_t seed() const { return seed_; }
  int rounds() const { return rounds_; }
  int moves() const { return moves_; }
  int run_count() const { return static_cast<int>(runs_.size()); }
  // Strategy used by each run, in play order.
  std::vector<StrategyKind> run_strategies() const;

  // Plays one round. The AI's move for it was fixed before this call.
  RoundResult Submit(Decision human);
  // The result of an already-played move, for idempotent resubmission.
  RoundResult Replayed(int move) const;
  void MarkExpired() { status_ = SessionStatus::kExpired; }

  SessionView View() const;
  // Only for completed sessions; one transcript per run in play order.
  std::vector<Transcript> Transcripts() const;
  // Full internal state (records, rng positions, committed moves, beliefs),
  // used to check that log replay is exact.
  std::string Snapshot() const;

 private:
  struct Run {
    StrategyKind strategy;
    AiPlayer ai;
    std::vector<RoundRecord> records;
    int cumulative_human = 0;
  };

  std::string id_;
  SessionMode mode_;
  int rounds_;
  std::uint64_t seed_;
  double theta_;
  QGrid grid_;
  SessionStatus status_ = SessionStatus::kInProgress;
  std::vector<Run> runs_;
  std::vector<RoundResult> results_;
  int current_run_ = 0;
  int moves_ = 0;
};

// Append-only event log: one JSON object per line, flushed and synced
// before Append returns.
class EventLog {
 public:
  explicit EventLog(const std::filesystem::path& path);
  ~EventLog();
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;

  void Append(const nlohmann::json& event);
  const std::filesystem::path& path() const { return path_; }

  // Throws ParseError on a malformed line.
  static std::vector<nlohmann::json> ReadAll(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::mutex mu_;
};

struct StoreOptions {
  // Empty: in-memory only, nothing persisted.
  std::filesystem::path data_dir;
  // Milliseconds since the epoch.
  std::function<std::int64_t()> clock;
  std::function<std::string()> id_generator;
  std::function<std::uint64_t()> seed_generator;
};

class SessionStore {
 public:
  // Replays <data_dir>/events.jsonl when it exists.
  explicit SessionStore(StoreOptions options = {});

  SessionView Create(const SessionOptions& options);
  // expected_move, when given, makes the call idempotent: a repeat of an
  // already-played move returns its recorded result.
  RoundResult Submit(const std::string& id, Decision human,
                     std::optional<int> expected_move = std::nullopt);
  SessionView Get(const std::string& id) const;
  std::vector<Transcript> GetTranscripts(const std::string& id) const;
  std::string Snapshot(const std::string& id) const;
  std::vector<std::string> SessionIds() const;

  // Marks in-progress sessions idle for longer than `idle` as expired.
  // Returns how many were expired.
  std::size_t ExpireIdle(std::chrono::milliseconds idle);
  // Transcripts of completed sessions only; expired ones are excluded.
  std::vector<Transcript> CompletedTranscripts() const;

  std::optional<std::filesystem::path> log_path() const;

 private:
  struct Entry {
    mutable std::mutex mu;
    std::unique_ptr<Session> session;
    std::int64_t last_activity = 0;
  };

  std::shared_ptr<Entry> Find(const std::string& id) const;
  void Record(const std::string& kind, const std::string& id,
              nlohmann::json payload);
  void Replay(const std::vector<nlohmann::json>& events);
  std::int64_t Now() const;

  StoreOptions options_;
  std::unique_ptr<EventLog> log_;
  mutable std::mutex map_mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

}  // namespace pennies

#endif  // PENNIES_SERVICE_H_
