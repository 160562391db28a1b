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

#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qpd/serialize.hpp"

namespace qpd::service {

namespace {

using std::chrono::system_clock;

struct ApiError : std::runtime_error {
  ApiError(int status, std::string field, const std::string& message)
      : std::runtime_error(message), status(status), field(std::move(field)) {}
  int status;
  std::string field;
};

ApiResponse error_response(const ApiError& e) {
  json body{{"schema_version", serialize::kSchemaVersion},
            {"error", e.what()}};
  if (!e.field.empty()) body["field"] = e.field;
  return {e.status, std::move(body)};
}

std::string range_text(double lo, double hi) {
  const auto name = [](double v) -> std::string {
    if (v == 0.0) return "0";
    if (v == kPi) return "pi";
    if (v == kHalfPi) return "pi/2";
    return serialize::format_double(v);
  };
  return "[" + name(lo) + ", " + name(hi) + "]";
}

double angle_in_range(double value, const std::string& field, double lo,
                      double hi) {
  const auto v = clamp_to_range(value, lo, hi);
  if (!v) {
    throw ApiError(400, field,
                   field + " = " + serialize::format_double(value) +
                       " outside " + range_text(lo, hi));
  }
  return *v;
}

double number_field(const json& obj, const std::string& key,
                    const std::string& field) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ApiError(400, field, field + " is required");
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ApiError(400, field, field + " must be a number");
  return v.get<double>();
}

StrategyParams strategy_value(const json& v, const std::string& field) {
  if (v.is_string()) {
    const auto s = named_strategy(v.get<std::string>());
    if (!s) {
      throw ApiError(400, field, field + " must be C, D, Q or {theta, phi}");
    }
    return *s;
  }
  if (!v.is_object()) {
    throw ApiError(400, field, field + " must be C, D, Q or {theta, phi}");
  }
  const std::string prefix = field.empty() ? "" : field + ".";
  return {angle_in_range(number_field(v, "theta", prefix + "theta"),
                         prefix + "theta", 0.0, kPi),
          angle_in_range(number_field(v, "phi", prefix + "phi"),
                         prefix + "phi", 0.0, kHalfPi)};
}

StrategyParams strategy_field(const json& body, const std::string& key) {
  if (!body.contains(key)) throw ApiError(400, key, key + " is required");
  return strategy_value(body.at(key), key);
}

double gamma_field(const json& body) {
  return angle_in_range(number_field(body, "gamma", "gamma"), "gamma", 0.0,
                        kHalfPi);
}

game::Backend backend_field(const json& body) {
  if (!body.contains("backend") || body.at("backend").is_null()) {
    return game::Backend::kQubit;
  }
  const auto& v = body.at("backend");
  if (v.is_string()) {
    if (const auto b = game::parse_backend(v.get<std::string>())) return *b;
  }
  throw ApiError(400, "backend", "backend must be \"qubit\" or \"optical\"");
}

OpponentPolicy policy_field(const json& body) {
  if (!body.contains("policy")) {
    throw ApiError(400, "policy", "policy is required");
  }
  const auto& v = body.at("policy");
  OpponentPolicy policy;
  std::string kind;
  if (v.is_string()) {
    kind = v.get<std::string>();
    if (auto named = named_strategy(kind)) {
      policy.kind = PolicyKind::kFixed;
      policy.fixed = *named;
      return policy;
    }
  } else if (v.is_object() && v.contains("kind") && v.at("kind").is_string()) {
    kind = v.at("kind").get<std::string>();
  } else {
    throw ApiError(400, "policy",
                   "policy must be a string or an object with a kind");
  }
  if (kind == "fixed") {
    if (!v.is_object() || !v.contains("strategy")) {
      throw ApiError(400, "policy.strategy", "fixed policy needs a strategy");
    }
    policy.kind = PolicyKind::kFixed;
    policy.fixed = strategy_value(v.at("strategy"), "policy.strategy");
  } else if (kind == "best_response") {
    policy.kind = PolicyKind::kBestResponse;
  } else if (kind == "mirror") {
    policy.kind = PolicyKind::kMirror;
  } else {
    throw ApiError(400, "policy",
                   "unknown policy '" + kind +
                       "' (fixed, best_response, mirror, C, D, Q)");
  }
  return policy;
}

std::string iso_time(system_clock::time_point t) {
  const auto secs = system_clock::to_time_t(t);
  const auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                          t.time_since_epoch())
                          .count() %
                      1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3)
      << std::setfill('0') << millis << 'Z';
  return out.str();
}

double parse_query_number(const std::map<std::string, std::string>& query,
                          const std::string& key) {
  const auto it = query.find(key);
  if (it == query.end()) throw ApiError(400, key, key + " is required");
  const std::string& text = it->second;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ApiError(400, key, key + " must be a number");
}

int parse_steps(const std::map<std::string, std::string>& query,
                const std::string& key, int fallback) {
  if (!query.count(key)) return fallback;
  const double v = parse_query_number(query, key);
  if (v != std::floor(v) || v < 2 || v > kMaxLandscapeSteps) {
    throw ApiError(400, key,
                   key + " must be an integer in [2, " +
                       std::to_string(kMaxLandscapeSteps) + "]");
  }
  return static_cast<int>(v);
}

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  std::size_t used = 0;
  const int out = std::stoi(v, &used);
  if (used != std::string(v).size()) {
    throw std::invalid_argument(std::string(name) + " must be an integer");
  }
  return out;
}

}  // namespace

ServiceConfig ServiceConfig::from_env() {
  ServiceConfig c;
  if (const char* v = std::getenv("QPD_BIND"); v && *v) c.bind_address = v;
  c.port = env_int("QPD_PORT", c.port);
  c.session_timeout = std::chrono::seconds(
      env_int("QPD_SESSION_TIMEOUT", static_cast<int>(c.session_timeout.count())));
  if (const char* v = std::getenv("QPD_HISTORY_LOG")) c.history_log = v;
  if (const char* v = std::getenv("QPD_GRID"); v && *v) {
    const std::string text = v;
    const auto x = text.find('x');
    if (x == std::string::npos) {
      throw std::invalid_argument("QPD_GRID must look like 65x33");
    }
    c.grid.theta_steps = std::stoi(text.substr(0, x));
    c.grid.phi_steps = std::stoi(text.substr(x + 1));
    c.grid.validate();
  }
  return c;
}

json policy_to_json(const OpponentPolicy& policy) {
  switch (policy.kind) {
    case PolicyKind::kFixed:
      return json{{"kind", "fixed"},
                  {"strategy", serialize::strategy_to_json(policy.fixed)}};
    case PolicyKind::kBestResponse:
      return json{{"kind", "best_response"}};
    case PolicyKind::kMirror:
      return json{{"kind", "mirror"}};
  }
  return json{};
}

json round_to_json(const RoundRecord& r) {
  json p = json::array();
  for (double v : r.distribution.p) p.push_back(v);
  return json{{"round", r.round},
              {"human", serialize::strategy_to_json(r.human)},
              {"opponent", serialize::strategy_to_json(r.opponent)},
              {"p", p},
              {"payoffs", json::array({r.payoff_human, r.payoff_opponent})},
              {"ts", r.timestamp}};
}

json session_to_json(const MatchSession& s) {
  json rounds = json::array();
  for (const auto& r : s.rounds) rounds.push_back(round_to_json(r));
  return json{{"schema_version", serialize::kSchemaVersion},
              {"session", s.id},
              {"gamma", s.gamma},
              {"policy", policy_to_json(s.policy)},
              {"rounds", rounds},
              {"created", iso_time(s.created)},
              {"updated", iso_time(s.updated)}};
}

GameService::GameService(ServiceConfig config, Clock clock)
    : config_(std::move(config)), clock_(std::move(clock)) {
  if (!clock_) clock_ = [] { return system_clock::now(); };
  config_.grid.validate();
  std::random_device rd;
  id_salt_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  if (!config_.history_log.empty()) {
    history_.open(config_.history_log, std::ios::app);
    if (!history_) {
      throw std::runtime_error("cannot open history log " + config_.history_log);
    }
  }
}

ApiResponse GameService::play(const json& body) const {
  try {
    if (!body.is_object()) throw ApiError(400, "", "body must be a JSON object");
    game::GameConfig gc;
    gc.gamma = gamma_field(body);
    gc.backend = backend_field(body);
    gc.jgate_tol = config_.jgate_tol;
    const auto a = strategy_field(body, "a");
    const auto b = strategy_field(body, "b");
    try {
      const auto result = game::play(gc, a, b);
      auto out = serialize::game_result_to_json(result, gc.gamma);
      out["a"] = serialize::strategy_to_json(a);
      out["b"] = serialize::strategy_to_json(b);
      return {200, out};
    } catch (const game::UnsolvedJGateError& e) {
      return {422, json{{"schema_version", serialize::kSchemaVersion},
                        {"error", e.what()},
                        {"residual", e.residual()}}};
    }
  } catch (const ApiError& e) {
    return error_response(e);
  }
}

ApiResponse GameService::landscape(
    const std::map<std::string, std::string>& query) const {
  try {
    game::GameConfig gc;
    gc.gamma = angle_in_range(parse_query_number(query, "gamma"), "gamma", 0.0,
                              kHalfPi);
    StrategyParams opponent = kDefect;
    if (const auto it = query.find("opponent"); it != query.end()) {
      const auto named = named_strategy(it->second);
      if (!named) throw ApiError(400, "opponent", "opponent must be C, D or Q");
      opponent = *named;
    } else {
      opponent.theta =
          angle_in_range(parse_query_number(query, "opponent_theta"),
                         "opponent_theta", 0.0, kPi);
      opponent.phi = angle_in_range(parse_query_number(query, "opponent_phi"),
                                    "opponent_phi", 0.0, kHalfPi);
    }
    game::LandscapeGrid grid{
        parse_steps(query, "theta_steps", config_.grid.theta_steps),
        parse_steps(query, "phi_steps", config_.grid.phi_steps)};
    const game::Game g(gc);
    const auto l = game::payoff_landscape(g, opponent, grid);
    return {200, serialize::landscape_to_json(l, gc.gamma, opponent)};
  } catch (const ApiError& e) {
    return error_response(e);
  }
}

ApiResponse GameService::thresholds() {
  std::lock_guard lock(thresholds_mutex_);
  if (!thresholds_cache_) {
    equilibrium::SweepOptions options;
    options.grid = config_.grid;
    try {
      const auto sweep = equilibrium::threshold_sweep(game::GameConfig{}, options);
      const auto full = serialize::sweep_to_json(sweep);
      thresholds_cache_ = json{{"schema_version", serialize::kSchemaVersion},
                               {"gamma1", full.at("gamma1")},
                               {"gamma2", full.at("gamma2")},
                               {"method", full.at("method")},
                               {"grid", full.at("grid")},
                               {"epsilon", full.at("epsilon")},
                               {"bisection_tol", full.at("bisection_tol")},
                               {"samples", options.samples}};
    } catch (const equilibrium::SweepError& e) {
      return {500, json{{"schema_version", serialize::kSchemaVersion},
                        {"error", e.what()}}};
    }
  }
  return {200, *thresholds_cache_};
}

std::string GameService::new_session_id() {
  // splitmix64 over a salted counter: unique per process, not guessable.
  std::uint64_t z = id_salt_ + 0x9e3779b97f4a7c15ULL * ++id_counter_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << z << std::setw(8)
      << id_counter_;
  return out.str();
}

ApiResponse GameService::create_session(const json& body) {
  try {
    if (!body.is_object()) throw ApiError(400, "", "body must be a JSON object");
    auto slot = std::make_shared<SessionSlot>();
    slot->session.gamma = gamma_field(body);
    slot->session.policy = policy_field(body);
    game::GameConfig gc;
    gc.gamma = slot->session.gamma;
    gc.backend = backend_field(body);
    gc.jgate_tol = config_.jgate_tol;
    slot->game = std::make_unique<game::Game>(gc);
    if (gc.backend == game::Backend::kOptical &&
        !slot->game->jgate_phases()->valid) {
      return {422, json{{"schema_version", serialize::kSchemaVersion},
                        {"error", "no J-gate decomposition for this gamma"},
                        {"residual", slot->game->jgate_phases()->residual}}};
    }
    const auto now = clock_();
    slot->session.created = now;
    slot->session.updated = now;

    expire_sessions();
    std::lock_guard lock(sessions_mutex_);
    slot->session.id = new_session_id();
    sessions_.emplace(slot->session.id, slot);
    json out{{"schema_version", serialize::kSchemaVersion},
             {"session", slot->session.id},
             {"gamma", slot->session.gamma},
             {"policy", policy_to_json(slot->session.policy)}};
    return {201, out};
  } catch (const ApiError& e) {
    return error_response(e);
  }
}

std::shared_ptr<GameService::SessionSlot> GameService::find_session(
    const std::string& id) {
  expire_sessions();
  std::lock_guard lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) {
    throw ApiError(404, "session", "unknown or expired session '" + id + "'");
  }
  return it->second;
}

ApiResponse GameService::post_round(const std::string& id, const json& body) {
  try {
    const auto slot = find_session(id);
    if (!body.is_object()) throw ApiError(400, "", "body must be a JSON object");
    StrategyParams human;
    if (body.contains("strategy")) {
      human = strategy_value(body.at("strategy"), "strategy");
    } else {
      human = strategy_value(body, "");
    }

    std::lock_guard lock(slot->mutex);
    MatchSession& s = slot->session;
    StrategyParams opponent;
    switch (s.policy.kind) {
      case PolicyKind::kFixed:
        opponent = s.policy.fixed;
        break;
      case PolicyKind::kMirror:
        opponent = s.rounds.empty() ? kCooperate : s.rounds.back().human;
        break;
      case PolicyKind::kBestResponse:
        opponent = equilibrium::best_response(*slot->game, human, config_.grid,
                                              game::Player::kBob)
                       .strategy;
        break;
    }
    const auto result = slot->game->play(human, opponent);
    RoundRecord r;
    r.round = static_cast<int>(s.rounds.size()) + 1;
    r.human = human;
    r.opponent = opponent;
    r.distribution = result.distribution;
    r.payoff_human = result.payoff_a;
    r.payoff_opponent = result.payoff_b;
    const auto now = clock_();
    r.timestamp = iso_time(now);
    s.rounds.push_back(r);
    s.updated = now;
    append_history(s, r);

    json out = round_to_json(r);
    out["schema_version"] = serialize::kSchemaVersion;
    out["session"] = s.id;
    return {200, out};
  } catch (const ApiError& e) {
    return error_response(e);
  } catch (const game::UnsolvedJGateError& e) {
    return {422, json{{"schema_version", serialize::kSchemaVersion},
                      {"error", e.what()},
                      {"residual", e.residual()}}};
  }
}

ApiResponse GameService::get_session(const std::string& id) {
  try {
    const auto slot = find_session(id);
    std::lock_guard lock(slot->mutex);
    return {200, session_to_json(slot->session)};
  } catch (const ApiError& e) {
    return error_response(e);
  }
}

std::size_t GameService::expire_sessions() {
  const auto now = clock_();
  std::lock_guard lock(sessions_mutex_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    system_clock::time_point updated;
    {
      std::lock_guard slot_lock(it->second->mutex);
      updated = it->second->session.updated;
    }
    if (now - updated > config_.session_timeout) {
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t GameService::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

void GameService::append_history(const MatchSession& s, const RoundRecord& r) {
  if (!history_.is_open()) return;
  json p = json::array();
  for (double v : r.distribution.p) p.push_back(v);
  const json line{{"session", s.id},
                  {"round", r.round},
                  {"gamma", s.gamma},
                  {"human", serialize::strategy_to_json(r.human)},
                  {"opponent", serialize::strategy_to_json(r.opponent)},
                  {"p", p},
                  {"payoffs", json::array({r.payoff_human, r.payoff_opponent})},
                  {"ts", r.timestamp}};
  std::lock_guard lock(history_mutex_);
  history_ << line.dump() << '\n';
  history_.flush();
}

}  // namespace qpd::service
