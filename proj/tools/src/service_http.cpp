// Copyright 2026 The qpd-optics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpd/tools/service.hpp"

// After Eigen: httplib's headers clash with Eigen declared later.
#include <httplib.h>

namespace qpd::service {

namespace {

void send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_content(api.body.dump(), "application/json");
}

// Parses the request body; replies 400 and returns nullopt on bad JSON.
std::optional<json> body_json(const httplib::Request& req,
                              httplib::Response& res) {
  const json parsed = json::parse(req.body, nullptr, false);
  if (parsed.is_discarded()) {
    send(res, {400, json{{"schema_version", 1},
                         {"error", "request body is not valid JSON"}}});
    return std::nullopt;
  }
  return std::optional<json>(parsed);
}

}  // namespace

void mount(GameService& service, httplib::Server& server) {
  server.Post("/api/play", [&](const httplib::Request& req,
                               httplib::Response& res) {
    if (const auto body = body_json(req, res)) send(res, service.play(*body));
  });
  server.Get("/api/landscape", [&](const httplib::Request& req,
                                   httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    send(res, service.landscape(query));
  });
  server.Get("/api/thresholds",
             [&](const httplib::Request&, httplib::Response& res) {
               send(res, service.thresholds());
             });
  server.Post("/api/session", [&](const httplib::Request& req,
                                  httplib::Response& res) {
    if (const auto body = body_json(req, res)) {
      send(res, service.create_session(*body));
    }
  });
  server.Post(R"(/api/session/([0-9a-f]+)/round)",
              [&](const httplib::Request& req, httplib::Response& res) {
                if (const auto body = body_json(req, res)) {
                  send(res, service.post_round(req.matches[1], *body));
                }
              });
  server.Get(R"(/api/session/([0-9a-f]+))",
             [&](const httplib::Request& req, httplib::Response& res) {
               send(res, service.get_session(req.matches[1]));
             });
}

}  // namespace qpd::service
