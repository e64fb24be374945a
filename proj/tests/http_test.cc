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

#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "pennies/http_api.h"
#include "pennies/transcript_io.h"

namespace pennies {
namespace {

using nlohmann::json;

class TestServer {
 public:
  TestServer() : store_(Options()) {
    RegisterRoutes(server_, store_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    REQUIRE(port_ > 0);
    thread_ = std::jthread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() { server_.stop(); }

  httplib::Client Client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }
  SessionStore& store() { return store_; }

 private:
  static StoreOptions Options() {
    auto counter = std::make_shared<int>(0);
    StoreOptions o;
    o.id_generator = [counter] { return "h" + std::to_string((*counter)++); };
    return o;
  }

  SessionStore store_;
  httplib::Server server_;
  int port_ = 0;
  std::jthread thread_;
};

json Body(const httplib::Result& r) {
  REQUIRE(r);
  return json::parse(r->body);
}

httplib::Result PostJson(httplib::Client& c, const std::string& path,
                         const json& body) {
  return c.Post(path, body.dump(), "application/json");
}

TEST_CASE("healthz") {
  TestServer srv;
  auto c = srv.Client();
  auto r = c.Get("/healthz");
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(Body(r)["status"] == "ok");
}

TEST_CASE("full game over HTTP") {
  TestServer srv;
  auto c = srv.Client();
  auto created = PostJson(c, "/sessions", {{"mode", "proposed"}, {"rounds", 3}, {"seed", 5}});
  REQUIRE(created);
  CHECK(created->status == 201);
  const json view = Body(created);
  const std::string id = view["id"];
  CHECK(view["status"] == "in-progress");
  CHECK(view["round_index"] == 0);
  CHECK(view["mode"] == "proposed");

  int cumulative = 0;
  for (int i = 0; i < 3; ++i) {
    auto r = PostJson(c, "/sessions/" + id + "/moves",
                      {{"choice", i == 1 ? json(1) : json("left")}});
    REQUIRE(r);
    CHECK(r->status == 200);
    const json res = Body(r);
    const int r1 = res["r1"];
    cumulative += r1;
    CHECK(res["round_index"] == i + 1);
    CHECK(res["cumulative_human"] == cumulative);
    CHECK(r1 == (res["human_choice"] == res["ai_choice"] ? 1 : -1));
    if (i == 0) {
      // Not yet complete.
      auto tr = c.Get("/sessions/" + id + "/transcript");
      REQUIRE(tr);
      CHECK(tr->status == 409);
      CHECK(Body(tr)["error"] == "session_in_progress");
    }
  }
  const json done = Body(c.Get("/sessions/" + id));
  CHECK(done["status"] == "complete");
  CHECK(done["cumulative_human"][0] == cumulative);

  auto late = PostJson(c, "/sessions/" + id + "/moves", {{"choice", "right"}});
  REQUIRE(late);
  CHECK(late->status == 409);
  CHECK(Body(late)["error"] == "session_complete");

  auto tr = c.Get("/sessions/" + id + "/transcript");
  REQUIRE(tr);
  CHECK(tr->status == 200);
  const auto parsed = TranscriptsFromString(tr->body);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].records.size() == 3);
  CHECK(CumulativePayoff(parsed[0], Player::kHuman).back() == cumulative);
}

TEST_CASE("paired study hides the mode until complete") {
  TestServer srv;
  auto c = srv.Client();
  const json view = Body(PostJson(c, "/sessions", {{"rounds", 1}, {"seed", 2}}));
  CHECK(view["runs"] == 2);
  const std::string id = view["id"];
  CHECK(Body(c.Get("/sessions/" + id))["mode"] == "paired-study");
  PostJson(c, "/sessions/" + id + "/moves", {{"choice", "left"}});
  const json last = Body(PostJson(c, "/sessions/" + id + "/moves", {{"choice", "left"}}));
  CHECK(last["session_complete"] == true);
  auto tr = c.Get("/sessions/" + id + "/transcript");
  REQUIRE(tr);
  CHECK(tr->status == 200);
  const auto parsed = TranscriptsFromString(tr->body);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].config.ai != parsed[1].config.ai);
}

TEST_CASE("error statuses") {
  TestServer srv;
  auto c = srv.Client();
  auto status = [](const httplib::Result& r) { return r ? r->status : -1; };

  CHECK(status(c.Get("/sessions/missing")) == 404);
  CHECK(status(PostJson(c, "/sessions/missing/moves", {{"choice", "left"}})) == 404);
  CHECK(status(c.Get("/sessions/missing/transcript")) == 404);
  CHECK(status(PostJson(c, "/sessions", {{"mode", "greedy"}})) == 400);
  CHECK(status(PostJson(c, "/sessions", {{"rounds", 0}})) == 400);
  CHECK(status(PostJson(c, "/sessions", {{"rounds", "ten"}})) == 400);
  CHECK(status(PostJson(c, "/sessions", {{"theta", -2.0}})) == 400);
  CHECK(status(c.Post("/sessions", "{not json", "application/json")) == 400);

  const std::string id =
      Body(PostJson(c, "/sessions", {{"mode", "nash"}, {"rounds", 5}}))["id"];
  const std::string moves = "/sessions/" + id + "/moves";
  CHECK(status(PostJson(c, moves, json::object())) == 400);
  CHECK(status(PostJson(c, moves, {{"choice", "up"}})) == 400);
  CHECK(status(PostJson(c, moves, {{"choice", 2}})) == 400);

  // Idempotent resubmission and conflicts.
  const json first = Body(PostJson(c, moves, {{"choice", "left"}, {"move", 0}}));
  const json again = Body(PostJson(c, moves, {{"choice", "left"}, {"move", 0}}));
  CHECK(first == again);
  CHECK(status(PostJson(c, moves, {{"choice", "right"}, {"move", 0}})) == 409);
  CHECK(status(PostJson(c, moves, {{"choice", "right"}, {"move", 4}})) == 409);

  srv.store().ExpireIdle(std::chrono::milliseconds(-1));
  auto expired = PostJson(c, moves, {{"choice", "left"}});
  CHECK(status(expired) == 410);
  CHECK(Body(c.Get("/sessions/" + id))["status"] == "expired");
}

}  // namespace
}  // namespace pennies
