// Copyright 2026 The bayescodenames Authors
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

#ifndef CODENAMES_SERVICE_HPP_
#define CODENAMES_SERVICE_HPP_

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <stop_token>
#include <string>
#include <vector>

#include <json.hpp>

#include "codenames/agents.hpp"
#include "codenames/harness.hpp"

namespace codenames {

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

struct ServiceOptions {
  GameRules rules;
  std::chrono::seconds idle_timeout{3600};
};

// Server-held game sessions between one human and one agent.
//
// status walks awaiting_clue -> awaiting_guess -> awaiting_clue ... ->
// finished. The spymaster side acts in awaiting_clue and the guesser side in
// awaiting_guess; the agent acts only through agent_step. A human guesser is
// never sent the category of an unrevealed card.
class PlayService {
 public:
  PlayService(std::shared_ptr<const ModelLibrary> library, std::vector<std::string> pool,
              ServiceOptions options = {});

  // {role, agent, composition?, seed?, environment?}
  ServiceResponse create_session(const nlohmann::json& body);
  ServiceResponse view(const std::string& id);
  ServiceResponse submit_clue(const std::string& id, const nlohmann::json& body);
  ServiceResponse submit_guess(const std::string& id, const nlohmann::json& body);
  ServiceResponse agent_step(const std::string& id);
  ServiceResponse beliefs(const std::string& id);
  ServiceResponse transcript(const std::string& id);

  // Routes one request; the HTTP binding and tests both go through here.
  ServiceResponse handle(const std::string& method, const std::string& path,
                         const std::string& body);

  // Drops sessions idle for longer than the timeout as of `now`.
  std::size_t expire_idle(std::chrono::steady_clock::time_point now);
  std::size_t session_count() const;

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id);
  nlohmann::json render(const Session& s) const;

  std::shared_ptr<const ModelLibrary> library_;
  std::vector<std::string> pool_;
  ServiceOptions options_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  Rng id_rng_;
};

// Blocks serving the API on host:port until the process is stopped.
void serve(PlayService& service, const std::string& host, int port);
// Returns once `stop` is requested.
void serve(PlayService& service, const std::string& host, int port, std::stop_token stop);

}  // namespace codenames

#endif  // CODENAMES_SERVICE_HPP_
