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

#include "pennies/service.h"

#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "pennies/errors.h"

namespace pennies {
namespace {

using nlohmann::json;

constexpr std::uint64_t kOrderStream = 3;
constexpr std::uint64_t kRunStreamBase = 100;

std::string RandomHexId() {
  std::random_device rd;
  std::ostringstream os;
  os << std::hex;
  for (int i = 0; i < 4; ++i) {
    const std::uint32_t word = rd();
    char buf[9];
    std::snprintf(buf, sizeof(buf), "%08x", word);
    os << buf;
  }
  return os.str();
}

std::uint64_t RandomSeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::int64_t SystemNowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::string_view SessionModeName(SessionMode mode) {
  switch (mode) {
    case SessionMode::kProposed: return "proposed";
    case SessionMode::kNash: return "nash";
    case SessionMode::kPairedStudy: return "paired-study";
  }
  return "unknown";
}

SessionMode ParseSessionMode(std::string_view name) {
  if (name == "proposed") return SessionMode::kProposed;
  if (name == "nash") return SessionMode::kNash;
  if (name == "paired-study") return SessionMode::kPairedStudy;
  throw DomainError("unknown session mode '" + std::string(name) + "'");
}

std::string_view SessionStatusName(SessionStatus status) {
  switch (status) {
    case SessionStatus::kInProgress: return "in-progress";
    case SessionStatus::kComplete: return "complete";
    case SessionStatus::kExpired: return "expired";
  }
  return "unknown";
}

// ---------------------------------------------------------------- Session

Session::Session(std::string id, const SessionOptions& options,
                 std::uint64_t seed)
    : id_(std::move(id)),
      mode_(options.mode),
      rounds_(options.rounds),
      seed_(seed),
      theta_(options.theta),
      grid_(options.grid) {
  if (rounds_ < 1) {
    throw SessionError(SessionError::Code::kValidation, "rounds must be >= 1");
  }
  std::optional<SoftmaxParam> theta;
  try {
    theta.emplace(theta_);
  } catch (const DomainError& e) {
    throw SessionError(SessionError::Code::kValidation, e.what());
  }
  std::vector<StrategyKind> order;
  switch (mode_) {
    case SessionMode::kProposed: order = {StrategyKind::kProposed}; break;
    case SessionMode::kNash: order = {StrategyKind::kNash}; break;
    case SessionMode::kPairedStudy: {
      RandomSource coin = RandomSource::Derive(seed_, kOrderStream);
      if (coin.Bernoulli(0.5)) {
        order = {StrategyKind::kProposed, StrategyKind::kNash};
      } else {
        order = {StrategyKind::kNash, StrategyKind::kProposed};
      }
      break;
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    runs_.push_back(Run{order[i],
                        AiPlayer(order[i], *theta, grid_,
                                 RandomSource::Derive(seed_, kRunStreamBase + i)),
                        {},
                        0});
  }
  // The AI's first move exists before the player is asked for theirs.
  runs_[0].ai.Commit();
}

std::vector<StrategyKind> Session::run_strategies() const {
  std::vector<StrategyKind> out;
  for (const Run& r : runs_) out.push_back(r.strategy);
  return out;
}

RoundResult Session::Submit(Decision human) {
  if (status_ == SessionStatus::kComplete) {
    throw SessionError(SessionError::Code::kComplete,
                       "session " + id_ + " is complete");
  }
  if (status_ == SessionStatus::kExpired) {
    throw SessionError(SessionError::Code::kExpired,
                       "session " + id_ + " has expired");
  }
  Run& run = runs_[current_run_];
  const Decision ai_move = *run.ai.committed();
  run.ai.Observe(human, ai_move);
  const RoundRecord rec =
      MakeRecord(static_cast<int>(run.records.size()), human, ai_move);
  run.records.push_back(rec);
  run.cumulative_human += ToInt(rec.r1);

  RoundResult result;
  result.human = human;
  result.ai = ai_move;
  result.r1 = rec.r1;
  result.cumulative_human = run.cumulative_human;
  result.round_index = static_cast<int>(run.records.size());
  result.run = current_run_;
  result.move = moves_;
  ++moves_;

  if (static_cast<int>(run.records.size()) == rounds_) {
    result.run_complete = true;
    ++current_run_;
    if (current_run_ == run_count()) {
      status_ = SessionStatus::kComplete;
      result.session_complete = true;
      current_run_ = run_count() - 1;
    } else {
      runs_[current_run_].ai.Commit();
    }
  } else {
    run.ai.Commit();
  }
  results_.push_back(result);
  return result;
}

RoundResult Session::Replayed(int move) const {
  if (move < 0 || move >= static_cast<int>(results_.size())) {
    throw SessionError(SessionError::Code::kConflict,
                       "move " + std::to_string(move) + " has not been played");
  }
  return results_[move];
}

SessionView Session::View() const {
  SessionView v;
  v.id = id_;
  v.mode = std::string(SessionModeName(mode_));
  v.status = status_;
  v.rounds = rounds_;
  v.runs = run_count();
  v.run = current_run_;
  v.round_index = static_cast<int>(runs_[current_run_].records.size());
  for (const Run& r : runs_) v.cumulative_human.push_back(r.cumulative_human);
  for (int i = current_run_; i >= 0; --i) {
    if (!runs_[i].records.empty()) {
      const RoundRecord& last = runs_[i].records.back();
      v.last = RoundDecisions{last.u1, last.u2};
      break;
    }
  }
  return v;
}

std::vector<Transcript> Session::Transcripts() const {
  if (status_ != SessionStatus::kComplete) {
    throw SessionError(SessionError::Code::kNotComplete,
                       "transcript is available only after completion");
  }
  std::vector<Transcript> out;
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    Transcript tr;
    tr.config.ai = runs_[i].strategy;
    tr.config.theta = theta_;
    tr.config.grid = grid_;
    tr.config.seed = seed_;
    tr.config.rounds = rounds_;
    tr.config.opponent = "human";
    tr.config.tags = {{"session", id_},
                      {"mode", std::string(SessionModeName(mode_))},
                      {"run", std::to_string(i)}};
    tr.records = runs_[i].records;
    out.push_back(std::move(tr));
  }
  return out;
}

std::string Session::Snapshot() const {
  json j;
  j["id"] = id_;
  j["mode"] = SessionModeName(mode_);
  j["status"] = SessionStatusName(status_);
  j["seed"] = seed_;
  j["rounds"] = rounds_;
  j["moves"] = moves_;
  j["current_run"] = current_run_;
  j["runs"] = json::array();
  for (const Run& r : runs_) {
    json jr;
    jr["strategy"] = StrategyName(r.strategy);
    jr["rng_draws"] = r.ai.rng().draws();
    jr["committed"] =
        r.ai.committed() ? json(ToInt(*r.ai.committed())) : json(nullptr);
    jr["cumulative_human"] = r.cumulative_human;
    json recs = json::array();
    for (const RoundRecord& rec : r.records) {
      recs.push_back({rec.t, ToInt(rec.u1), ToInt(rec.u2), ToInt(rec.r1)});
    }
    jr["records"] = recs;
    if (r.ai.belief()) {
      std::ostringstream os;
      r.ai.belief()->WriteTable(os);
      jr["belief"] = os.str();
    }
    j["runs"].push_back(jr);
  }
  return j.dump();
}

// --------------------------------------------------------------- EventLog

EventLog::EventLog(const std::filesystem::path& path) : path_(path) {
  file_ = std::fopen(path.c_str(), "ab");
  if (file_ == nullptr) {
    throw std::runtime_error("cannot open event log " + path.string() + ": " +
                             std::strerror(errno));
  }
}

EventLog::~EventLog() {
  if (file_ != nullptr) std::fclose(file_);
}

void EventLog::Append(const json& event) {
  const std::string line = event.dump() + "\n";
  std::lock_guard<std::mutex> lock(mu_);
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() ||
      std::fflush(file_) != 0) {
    throw std::runtime_error("event log write failed: " + path_.string());
  }
  ::fsync(::fileno(file_));
}

std::vector<json> EventLog::ReadAll(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::vector<json> out;
  if (!is) return out;
  const std::string text{std::istreambuf_iterator<char>(is),
                         std::istreambuf_iterator<char>()};
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', pos);
    // An unterminated tail is a torn write that was never acknowledged.
    if (nl == std::string::npos) break;
    const std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("bad event: ") + e.what());
    }
  }
  return out;
}

// ----------------------------------------------------------- SessionStore

SessionStore::SessionStore(StoreOptions options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = SystemNowMs;
  if (!options_.id_generator) options_.id_generator = RandomHexId;
  if (!options_.seed_generator) options_.seed_generator = RandomSeed;
  if (options_.data_dir.empty()) return;

  namespace fs = std::filesystem;
  if (!fs::exists(options_.data_dir)) {
    fs::create_directories(options_.data_dir);
    fs::permissions(options_.data_dir, fs::perms::owner_all,
                    fs::perm_options::replace);
  }
  const fs::path log_path = options_.data_dir / "events.jsonl";
  Replay(EventLog::ReadAll(log_path));
  log_ = std::make_unique<EventLog>(log_path);
}

std::optional<std::filesystem::path> SessionStore::log_path() const {
  if (!log_) return std::nullopt;
  return log_->path();
}

std::int64_t SessionStore::Now() const { return options_.clock(); }

void SessionStore::Record(const std::string& kind, const std::string& id,
                          json payload) {
  if (!log_) return;
  json event;
  event["ts"] = Now();
  event["session"] = id;
  event["kind"] = kind;
  event["payload"] = std::move(payload);
  log_->Append(event);
}

void SessionStore::Replay(const std::vector<json>& events) {
  for (const json& ev : events) {
    const std::string kind = ev.at("kind").get<std::string>();
    const std::string id = ev.at("session").get<std::string>();
    const json& p = ev.at("payload");
    const std::int64_t ts = ev.at("ts").get<std::int64_t>();
    if (kind == "created") {
      SessionOptions opts;
      opts.mode = ParseSessionMode(p.at("mode").get<std::string>());
      opts.rounds = p.at("rounds").get<int>();
      opts.theta = p.at("theta").get<double>();
      opts.grid = QGrid(p.at("grid").get<std::vector<double>>());
      auto entry = std::make_shared<Entry>();
      entry->session = std::make_unique<Session>(
          id, opts, p.at("seed").get<std::uint64_t>());
      entry->last_activity = ts;
      sessions_[id] = std::move(entry);
      continue;
    }
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
      throw InvariantViolation("event for unknown session " + id);
    }
    Session& s = *it->second->session;
    it->second->last_activity = ts;
    if (kind == "move") {
      if (p.at("move").get<int>() != s.moves()) {
        throw InvariantViolation("event log move index gap in session " + id);
      }
      const RoundResult r = s.Submit(DecisionFromInt(p.at("human").get<int>()));
      if (ToInt(r.ai) != p.at("ai").get<int>()) {
        throw InvariantViolation("replayed AI move differs in session " + id);
      }
    } else if (kind == "completed") {
      if (s.status() != SessionStatus::kComplete) {
        throw InvariantViolation("completed event for unfinished session " + id);
      }
    } else if (kind == "expired") {
      s.MarkExpired();
    } else {
      throw InvariantViolation("unknown event kind " + kind);
    }
  }
}

std::shared_ptr<SessionStore::Entry> SessionStore::Find(
    const std::string& id) const {
  std::lock_guard<std::mutex> lock(map_mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw SessionError(SessionError::Code::kNotFound,
                       "no session with id " + id);
  }
  return it->second;
}

SessionView SessionStore::Create(const SessionOptions& options) {
  const std::uint64_t seed =
      options.seed ? *options.seed : options_.seed_generator();
  std::string id;
  {
    std::lock_guard<std::mutex> lock(map_mu_);
    do {
      id = options_.id_generator();
    } while (sessions_.count(id) != 0);
  }
  auto entry = std::make_shared<Entry>();
  entry->session = std::make_unique<Session>(id, options, seed);
  entry->last_activity = Now();
  Record("created", id,
         {{"mode", SessionModeName(options.mode)},
          {"rounds", options.rounds},
          {"seed", seed},
          {"theta", options.theta},
          {"grid", options.grid.values()}});
  SessionView view = entry->session->View();
  std::lock_guard<std::mutex> lock(map_mu_);
  sessions_[id] = std::move(entry);
  return view;
}

RoundResult SessionStore::Submit(const std::string& id, Decision human,
                                 std::optional<int> expected_move) {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mu);
  Session& s = *entry->session;
  if (expected_move && *expected_move != s.moves()) {
    if (*expected_move >= 0 && *expected_move < s.moves()) {
      RoundResult prior = s.Replayed(*expected_move);
      if (prior.human == human) return prior;
    }
    throw SessionError(SessionError::Code::kConflict,
                       "expected move " + std::to_string(*expected_move) +
                           " but the session is at move " +
                           std::to_string(s.moves()));
  }
  const RoundResult r = s.Submit(human);
  entry->last_activity = Now();
  Record("move", id,
         {{"move", r.move},
          {"run", r.run},
          {"t", r.round_index - 1},
          {"human", ToInt(r.human)},
          {"ai", ToInt(r.ai)},
          {"r1", ToInt(r.r1)}});
  if (r.session_complete) Record("completed", id, json::object());
  return r;
}

SessionView SessionStore::Get(const std::string& id) const {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mu);
  return entry->session->View();
}

std::vector<Transcript> SessionStore::GetTranscripts(
    const std::string& id) const {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mu);
  return entry->session->Transcripts();
}

std::string SessionStore::Snapshot(const std::string& id) const {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mu);
  return entry->session->Snapshot();
}

std::vector<std::string> SessionStore::SessionIds() const {
  std::lock_guard<std::mutex> lock(map_mu_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : sessions_) ids.push_back(id);
  return ids;
}

std::size_t SessionStore::ExpireIdle(std::chrono::milliseconds idle) {
  std::size_t expired = 0;
  const std::int64_t now = Now();
  for (const std::string& id : SessionIds()) {
    auto entry = Find(id);
    std::lock_guard<std::mutex> lock(entry->mu);
    Session& s = *entry->session;
    if (s.status() == SessionStatus::kInProgress &&
        now - entry->last_activity > idle.count()) {
      s.MarkExpired();
      Record("expired", id, json::object());
      ++expired;
    }
  }
  return expired;
}

std::vector<Transcript> SessionStore::CompletedTranscripts() const {
  std::vector<Transcript> out;
  for (const std::string& id : SessionIds()) {
    auto entry = Find(id);
    std::lock_guard<std::mutex> lock(entry->mu);
    if (entry->session->status() != SessionStatus::kComplete) continue;
    for (Transcript& tr : entry->session->Transcripts()) {
      out.push_back(std::move(tr));
    }
  }
  return out;
}

}  // namespace pennies
