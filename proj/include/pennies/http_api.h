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

#ifndef PENNIES_HTTP_API_H_
#define PENNIES_HTTP_API_H_

#include <string>

#include "json.hpp"
#include "pennies/service.h"

namespace httplib {
class Server;
}

namespace pennies {

// Routes (see docs/api.md):
//   POST /sessions
//   POST /sessions/{id}/moves
//   GET  /sessions/{id}
//   GET  /sessions/{id}/transcript
//   GET  /healthz
void RegisterRoutes(httplib::Server& server, SessionStore& store);

nlohmann::json ViewToJson(const SessionView& view);
nlohmann::json ResultToJson(const RoundResult& result);
int HttpStatusFor(SessionError::Code code);

}  // namespace pennies

#endif  // PENNIES_HTTP_API_H_
