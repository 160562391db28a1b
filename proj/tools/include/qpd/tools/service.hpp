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

// JSON-over-HTTP game service. The handlers are plain member functions so
// they can be exercised without a socket; `mount` binds them to an
// httplib::Server.
//
//   POST /api/play                      stateless round
//   GET  /api/landscape                 payoff grid vs a fixed opponent
//   GET  /api/thresholds                gamma1, gamma2 (computed once)
//   POST /api/session                   new match session
//   POST /api/session/{id}/round        play a round in a session
//   GET  /api/session/{id}              session with round history

#ifndef QPD_TOOLS_SERVICE_HPP_
#define QPD_TOOLS_SERVICE_HPP_

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpd/equilibrium.hpp"
#include "qpd/game.hpp"
#include "qpd/strategy.hpp"

namespace httplib {
class Server;
}

namespace qpd::service {

using nlohmann::json;
using Clock = std::function<std::chrono::system_clock::time_point()>;

struct ServiceConfig {
  std::string bind_address = "127.0.0.1";
  int port = 8080;
  std::chrono::seconds session_timeout{3600};
  std::string history_log;  // empty: no on-disk log
  equilibrium::StrategyGrid grid;
  double jgate_tol = 1e-8;

  // QPD_BIND, QPD_PORT, QPD_SESSION_TIMEOUT (seconds), QPD_HISTORY_LOG,
  // QPD_GRID ("65x33"). Throws std::invalid_argument on malformed values.
  static ServiceConfig from_env();
};

inline constexpr int kMaxLandscapeSteps = 257;

struct ApiResponse {
  int status = 200;
  json body;
};

enum class PolicyKind { kFixed, kBestResponse, kMirror };

struct OpponentPolicy {
  PolicyKind kind = PolicyKind::kFixed;
  StrategyParams fixed = kCooperate;
};

struct RoundRecord {
  int round = 0;
  StrategyParams human;
  StrategyParams opponent;
  game::OutcomeDistribution distribution;
  double payoff_human = 0.0;
  double payoff_opponent = 0.0;
  std::string timestamp;
};

struct MatchSession {
  std::string id;
  double gamma = 0.0;
  OpponentPolicy policy;
  std::vector<RoundRecord> rounds;
  std::chrono::system_clock::time_point created;
  std::chrono::system_clock::time_point updated;
};

class GameService {
 public:
  explicit GameService(ServiceConfig config, Clock clock = {});

  const ServiceConfig& config() const { return config_; }

  ApiResponse play(const json& body) const;
  ApiResponse landscape(const std::map<std::string, std::string>& query) const;
  ApiResponse thresholds();
  ApiResponse create_session(const json& body);
  ApiResponse post_round(const std::string& id, const json& body);
  ApiResponse get_session(const std::string& id);

  // Drops sessions idle for longer than the configured timeout.
  std::size_t expire_sessions();
  std::size_t session_count() const;

 private:
  struct SessionSlot {
    std::mutex mutex;  // serializes rounds within one session
    MatchSession session;
    std::unique_ptr<game::Game> game;
  };

  std::shared_ptr<SessionSlot> find_session(const std::string& id);
  std::string new_session_id();
  void append_history(const MatchSession& session, const RoundRecord& round);

  ServiceConfig config_;
  Clock clock_;

  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<SessionSlot>> sessions_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t id_salt_ = 0;

  std::mutex thresholds_mutex_;
  std::optional<json> thresholds_cache_;

  std::mutex history_mutex_;
  std::ofstream history_;
};

json round_to_json(const RoundRecord& round);
json session_to_json(const MatchSession& session);
json policy_to_json(const OpponentPolicy& policy);

// Registers every endpoint on `server`; `service` must outlive it.
void mount(GameService& service, httplib::Server& server);

}  // namespace qpd::service

#endif  // QPD_TOOLS_SERVICE_HPP_
