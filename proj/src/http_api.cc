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

#include "pennies/http_api.h"

#include "httplib.h"
#include "pennies/errors.h"
#include "pennies/transcript_io.h"

namespace pennies {
namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";

void SendError(httplib::Response& res, int status, const std::string& code,
               const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", code}, {"message", message}}.dump(), kJson);
}

std::string CodeName(SessionError::Code code) {
  switch (code) {
    case SessionError::Code::kNotFound: return "not_found";
    case SessionError::Code::kValidation: return "validation";
    case SessionError::Code::kComplete: return "session_complete";
    case SessionError::Code::kNotComplete: return "session_in_progress";
    case SessionError::Code::kExpired: return "session_expired";
    case SessionError::Code::kConflict: return "move_conflict";
  }
  return "error";
}

Decision ParseChoice(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "left") return Decision::kLeft;
    if (s == "right") return Decision::kRight;
  } else if (v.is_number_integer()) {
    const auto i = v.get<int>();
    if (i == 0 || i == 1) return DecisionFromInt(i);
  }
  throw SessionError(SessionError::Code::kValidation,
                     "choice must be \"left\", \"right\", 0 or 1");
}

json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    throw SessionError(SessionError::Code::kValidation,
                       "body must be a JSON object");
  }
  return body;
}

// Runs a handler, mapping domain errors to status codes.
template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const SessionError& e) {
    SendError(res, HttpStatusFor(e.code()), CodeName(e.code()), e.what());
  } catch (const DomainError& e) {
    SendError(res, 400, "validation", e.what());
  } catch (const json::exception& e) {
    SendError(res, 400, "validation", e.what());
  } catch (const std::exception& e) {
    SendError(res, 500, "internal", e.what());
  }
}

}  // namespace

int HttpStatusFor(SessionError::Code code) {
  switch (code) {
    case SessionError::Code::kNotFound: return 404;
    case SessionError::Code::kValidation: return 400;
    case SessionError::Code::kComplete: return 409;
    case SessionError::Code::kNotComplete: return 409;
    case SessionError::Code::kExpired: return 410;
    case SessionError::Code::kConflict: return 409;
  }
  return 500;
}

json ViewToJson(const SessionView& v) {
  json j;
  j["id"] = v.id;
  j["mode"] = v.mode;
  j["status"] = SessionStatusName(v.status);
  j["rounds"] = v.rounds;
  j["runs"] = v.runs;
  j["run"] = v.run;
  j["round_index"] = v.round_index;
  j["cumulative_human"] = v.cumulative_human;
  if (v.last) {
    j["last"] = {{"human", DecisionName(v.last->u1)},
                 {"ai", DecisionName(v.last->u2)},
                 {"r1", ToInt(HumanPayoff(v.last->u1, v.last->u2))}};
  } else {
    j["last"] = nullptr;
  }
  return j;
}

json ResultToJson(const RoundResult& r) {
  return {{"human_choice", DecisionName(r.human)},
          {"ai_choice", DecisionName(r.ai)},
          {"r1", ToInt(r.r1)},
          {"cumulative_human", r.cumulative_human},
          {"round_index", r.round_index},
          {"run", r.run},
          {"move", r.move},
          {"run_complete", r.run_complete},
          {"session_complete", r.session_complete}};
}

void RegisterRoutes(httplib::Server& server, SessionStore& store) {
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(json{{"status", "ok"}}.dump(), kJson);
  });

  server.Post("/sessions", [&store](const httplib::Request& req,
                                    httplib::Response& res) {
    Guarded(res, [&] {
      const json body = ParseBody(req);
      SessionOptions opts;
      opts.mode = ParseSessionMode(body.value("mode", std::string("paired-study")));
      opts.rounds = body.value("rounds", 150);
      if (body.contains("seed") && !body["seed"].is_null()) {
        opts.seed = body["seed"].get<std::uint64_t>();
      }
      if (body.contains("theta")) opts.theta = body["theta"].get<double>();
      const SessionView view = store.Create(opts);
      res.status = 201;
      res.set_content(ViewToJson(view).dump(), kJson);
    });
  });

  server.Post(R"(/sessions/([^/]+)/moves)",
              [&store](const httplib::Request& req, httplib::Response& res) {
                Guarded(res, [&] {
                  const json body = ParseBody(req);
                  if (!body.contains("choice")) {
                    throw SessionError(SessionError::Code::kValidation,
                                       "missing field 'choice'");
                  }
                  std::optional<int> expected;
                  if (body.contains("move")) expected = body["move"].get<int>();
                  const RoundResult r = store.Submit(
                      req.matches[1], ParseChoice(body["choice"]), expected);
                  res.set_content(ResultToJson(r).dump(), kJson);
                });
              });

  server.Get(R"(/sessions/([^/]+))",
             [&store](const httplib::Request& req, httplib::Response& res) {
               Guarded(res, [&] {
                 res.set_content(ViewToJson(store.Get(req.matches[1])).dump(),
                                 kJson);
               });
             });

  server.Get(R"(/sessions/([^/]+)/transcript)",
             [&store](const httplib::Request& req, httplib::Response& res) {
               Guarded(res, [&] {
                 const auto transcripts = store.GetTranscripts(req.matches[1]);
                 res.set_content(TranscriptsToString(transcripts),
                                 "text/plain; charset=utf-8");
               });
             });
}

}  // namespace pennies
