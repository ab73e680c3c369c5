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

#include "codenames/service.hpp"

#include <httplib.h>

#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

namespace codenames {

using nlohmann::json;

namespace {

ServiceResponse error(int status, std::string code, std::string message, std::string rule = "") {
  return {status, json{{"code", std::move(code)}, {"message", std::move(message)},
                       {"rule", std::move(rule)}}};
}

constexpr const char* kAwaitingClue = "awaiting_clue";
constexpr const char* kAwaitingGuess = "awaiting_guess";
constexpr const char* kFinished = "finished";

json reveal_json(const BoardView& view, const Reveal& r) {
  return {{"word", view.words[r.card]}, {"category", to_string(r.category)}, {"turn", r.turn}};
}

}  // namespace

struct PlayService::Session {
  std::mutex mu;
  std::string id;
  std::string role;  // the human's role
  AgentSpec agent;
  Environment env;
  GameSeeds seeds;
  WorldState world;
  BoardView view;
  std::unique_ptr<SpymasterAgent> spymaster;
  std::unique_ptr<GuesserAgent> guesser;
  std::string status = kAwaitingClue;
  std::optional<Clue> given;     // clue as the spymaster gave it
  std::optional<Clue> received;  // clue after the channel
  Rng channel_rng;
  Transcript transcript;
  json history = json::array();
  std::chrono::steady_clock::time_point last_used;
};

PlayService::PlayService(std::shared_ptr<const ModelLibrary> library,
                         std::vector<std::string> pool, ServiceOptions options)
    : library_(std::move(library)),
      pool_(std::move(pool)),
      options_(options),
      id_rng_(std::random_device{}()) {}

std::size_t PlayService::session_count() const {
  std::lock_guard lock(mu_);
  return sessions_.size();
}

std::size_t PlayService::expire_idle(std::chrono::steady_clock::time_point now) {
  std::lock_guard lock(mu_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock session_lock(it->second->mu, std::try_to_lock);
    if (session_lock.owns_lock() && now - it->second->last_used > options_.idle_timeout) {
      session_lock.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::shared_ptr<PlayService::Session> PlayService::find(const std::string& id) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

json PlayService::render(const Session& s) const {
  const bool spymaster_view = s.role == "spymaster";
  json board = json::array();
  for (int i = 0; i < s.view.size(); ++i) {
    json card{{"word", s.view.words[i]}, {"revealed", s.view.is_revealed(i)}};
    if (s.view.is_revealed(i)) {
      card["category"] = to_string(*s.view.revealed[i]);
    } else if (spymaster_view) {
      card["category"] = to_string(s.world.categories[i]);
    }
    board.push_back(std::move(card));
  }
  const auto& c = s.view.composition;
  json out{{"session", s.id},
           {"role", s.role},
           {"agent", s.agent.text},
           {"environment", s.env.label()},
           {"status", s.status},
           {"turn", s.view.turn},
           {"turn_limit", s.view.turn_limit},
           {"composition",
            {{"red", c.red}, {"blue", c.blue}, {"bystander", c.bystander}, {"assassin", c.assassin}}},
           {"remaining",
            {{"red", s.view.remaining(CardCategory::Red)},
             {"blue", s.view.remaining(CardCategory::Blue)},
             {"bystander", s.view.remaining(CardCategory::Bystander)},
             {"assassin", s.view.remaining(CardCategory::Assassin)}}},
           {"board", std::move(board)},
           {"history", s.history}};
  if (s.status == kAwaitingGuess && s.received) {
    out["clue"] = {{"word", s.received->word}, {"number", s.received->number}};
  }
  if (s.status == kFinished) {
    auto o = game_outcome(s.view);
    out["outcome"] = {{"win", o.win}, {"score", o.score}, {"turns", o.turns},
                      {"assassin", o.assassin}, {"blue_guessed", o.blue_guessed}};
  }
  return out;
}

ServiceResponse PlayService::create_session(const json& body) {
  if (!body.is_object()) return error(400, "bad_request", "body must be a JSON object");
  std::string role = body.value("role", "");
  if (role != "spymaster" && role != "guesser") {
    return error(400, "bad_request", "role must be 'spymaster' or 'guesser'");
  }
  auto session = std::make_shared<Session>();
  session->role = role;
  GameRules rules = options_.rules;
  try {
    session->agent = parse_agent_spec(body.value("agent", ""));
    const std::string agent_role = role == "spymaster" ? "guesser" : "spymaster";
    if (session->agent.role != agent_role) {
      return error(400, "bad_request", "a human " + role + " needs a " + agent_role + " agent");
    }
    for (const auto& m : session->agent.models) {
      if (!library_->has(m)) return error(400, "unavailable_embedding", "unknown embedding '" + m + "'");
    }
    if (body.contains("composition")) {
      const auto& c = body["composition"];
      rules.composition = {c.value("red", 9), c.value("blue", 8), c.value("bystander", 7),
                           c.value("assassin", 1)};
      rules.board_size = rules.composition.total();
    }
    rules.turn_limit = body.value("turn_limit", rules.turn_limit);
    session->env = parse_environment(body.value("environment", "deterministic"));
    if (body.contains("seed") &&
        !(body["seed"].is_number_integer() && body["seed"].get<std::int64_t>() >= 0) &&
        !body["seed"].is_number_unsigned()) {
      return error(400, "bad_request", "seed must be a non-negative integer");
    }
  } catch (const json::exception& e) {
    return error(400, "bad_request", e.what());
  } catch (const Error& e) {
    return error(400, "bad_request", e.what());
  }

  std::uint64_t seed = 0;
  {
    std::lock_guard lock(mu_);
    seed = id_rng_();
    if (body.contains("seed")) seed = body["seed"].get<std::uint64_t>();
    std::ostringstream id;
    id << std::hex << std::setw(16) << std::setfill('0') << id_rng_();
    session->id = id.str();
  }
  session->seeds = {derive_seed(seed, "board"), derive_seed(seed, "spymaster"),
                    derive_seed(seed, "guesser"), derive_seed(seed, "channel")};
  try {
    Rng board_rng(session->seeds.board);
    std::tie(session->world, session->view) = new_game(pool_, rules, board_rng);
    if (role == "guesser") {
      session->spymaster = library_->make_spymaster(session->agent, session->seeds.spymaster);
    } else {
      session->guesser = library_->make_guesser(session->agent, session->seeds.guesser);
    }
  } catch (const Error& e) {
    return error(400, "bad_request", e.what());
  }
  session->channel_rng.seed(session->seeds.channel);
  auto& meta = session->transcript.meta;
  meta["human"] = role;
  meta["agent"] = session->agent.text;
  meta["environment"] = session->env.label();
  meta["seed_board"] = std::to_string(session->seeds.board);
  meta["seed_spymaster"] = std::to_string(session->seeds.spymaster);
  meta["seed_guesser"] = std::to_string(session->seeds.guesser);
  meta["seed_channel"] = std::to_string(session->seeds.channel);
  session->transcript.board(session->view, session->world);
  session->last_used = std::chrono::steady_clock::now();

  expire_idle(session->last_used);
  json out;
  {
    std::lock_guard lock(session->mu);
    out = render(*session);
  }
  out["seed"] = seed;
  std::lock_guard lock(mu_);
  sessions_[session->id] = session;
  return {201, out};
}

ServiceResponse PlayService::view(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "not_found", "no session '" + id + "'");
  std::lock_guard lock(s->mu);
  s->last_used = std::chrono::steady_clock::now();
  return {200, render(*s)};
}

namespace {

// Applies a clue from either side: legality, the channel, the transcript.
void accept_clue(auto& s, const Clue& clue) {
  validate_clue(s.view, clue);
  s.transcript.clue(clue);
  s.given = clue;
  s.received = clue;
  if (s.env.stochastic && s.env.channel == Channel::SnapNoise && s.spymaster) {
    const auto& speaker = s.spymaster->semantics();
    const auto& table = *speaker.embedding;
    if (auto id = table.find(clue.word); id && s.env.sigma > 0.0) {
      Vector noisy = table.project(perturb(table.raw_vector(*id), s.env.sigma, s.channel_rng));
      std::unordered_set<WordId> board;
      for (const auto& w : s.view.words) {
        if (auto b = table.find(w)) board.insert(*b);
      }
      auto best = speaker.index ? nearest_words(table, *speaker.index, *id, noisy, 1, board)
                                : nearest_words(table, noisy, 1, board);
      if (!best.empty() && table.word(best.front().word) != clue.word) {
        s.received = Clue{table.word(best.front().word), clue.number};
        s.transcript.channel(s.received->word);
      }
    }
  }
  s.status = kAwaitingGuess;
}

json resolve_guess(auto& s, const GuessSequence& guess) {
  validate_guess(s.view, *s.received, guess);
  auto result = resolve_turn(s.world, s.view, *s.received, guess);
  json events = json::array();
  for (std::size_t i = 0; i < result.observed.size(); ++i) {
    s.transcript.reveal(s.view, result.observed[i]);
    if (s.guesser) s.guesser->observe_reveal(static_cast<int>(i), result.observed[i]);
    events.push_back(reveal_json(s.view, result.observed[i]));
  }
  if (s.spymaster) s.spymaster->observe_turn(*s.given, result.observed);
  s.history.push_back({{"clue", {{"word", s.received->word}, {"number", s.received->number}}},
                       {"reveals", events}});
  s.given.reset();
  s.received.reset();
  if (is_terminal(s.view)) {
    s.status = kFinished;
    s.transcript.end(game_outcome(s.view));
  } else {
    s.status = kAwaitingClue;
  }
  return events;
}

}  // namespace

ServiceResponse PlayService::submit_clue(const std::string& id, const json& body) {
  auto s = find(id);
  if (!s) return error(404, "not_found", "no session '" + id + "'");
  std::lock_guard lock(s->mu);
  s->last_used = std::chrono::steady_clock::now();
  if (s->role != "spymaster") return error(409, "conflict", "the agent gives clues in this session");
  if (s->status != kAwaitingClue) return error(409, "conflict", "session is " + s->status);
  if (!body.is_object() || !body.contains("word") || !body["word"].is_string() ||
      !body.contains("number") || !body["number"].is_number_integer()) {
    return error(400, "bad_request", "clue needs a string word and an integer number");
  }
  std::string word = body["word"].get<std::string>();
  for (char& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  try {
    accept_clue(*s, Clue{word, body["number"].get<int>()});
  } catch (const IllegalAction& e) {
    return error(422, "illegal_action", e.what(), e.rule());
  }
  return {200, {{"view", render(*s)}, {"events", json::array()}}};
}

ServiceResponse PlayService::submit_guess(const std::string& id, const json& body) {
  auto s = find(id);
  if (!s) return error(404, "not_found", "no session '" + id + "'");
  std::lock_guard lock(s->mu);
  s->last_used = std::chrono::steady_clock::now();
  if (s->role != "guesser") return error(409, "conflict", "the agent guesses in this session");
  if (s->status != kAwaitingGuess) return error(409, "conflict", "session is " + s->status);
  if (!body.is_object() || !body.contains("words") || !body["words"].is_array()) {
    return error(400, "bad_request", "guess needs a words array");
  }
  GuessSequence guess;
  for (const auto& w : body["words"]) {
    if (!w.is_string()) return error(400, "bad_request", "guess words must be strings");
    std::string word = w.get<std::string>();
    for (char& ch : word) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    auto card = s->view.card_index(word);
    if (!card) {
      return error(422, "illegal_action", "'" + word + "' is not on the board",
                   "guesses must name board cards");
    }
    guess.push_back(*card);
  }
  try {
    auto events = resolve_guess(*s, guess);
    return {200, {{"view", render(*s)}, {"events", events}}};
  } catch (const IllegalAction& e) {
    return error(422, "illegal_action", e.what(), e.rule());
  }
}

ServiceResponse PlayService::agent_step(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "not_found", "no session '" + id + "'");
  std::lock_guard lock(s->mu);
  s->last_used = std::chrono::steady_clock::now();
  try {
    if (s->status == kAwaitingClue && s->spymaster) {
      accept_clue(*s, s->spymaster->give_clue(s->world, s->view));
      return {200, {{"view", render(*s)}, {"events", json::array()}}};
    }
    if (s->status == kAwaitingGuess && s->guesser) {
      ReceivedClue received{*s->received, 0.0, &s->channel_rng};
      if (s->env.stochastic && s->env.channel == Channel::ClueVectorNoise) {
        received.vector_noise = s->env.sigma;
      }
      auto events = resolve_guess(*s, s->guesser->guess(s->view, received));
      return {200, {{"view", render(*s)}, {"events", events}}};
    }
  } catch (const IllegalAction& e) {
    // The agent broke a rule; the game cannot continue.
    s->status = kFinished;
    s->transcript.invalid(e.rule() + ": " + e.what());
    return error(500, "agent_error", e.what(), e.rule());
  }
  return error(409, "conflict", "it is not the agent's turn (session is " + s->status + ")");
}

ServiceResponse PlayService::beliefs(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "not_found", "no session '" + id + "'");
  std::lock_guard lock(s->mu);
  s->last_used = std::chrono::steady_clock::now();
  BeliefSnapshot snap = s->spymaster ? s->spymaster->beliefs() : s->guesser->beliefs();
  json posterior = json::array();
  for (const auto& [model, p] : snap.posterior) posterior.push_back({{"model", model}, {"p", p}});
  json out{{"bayesian", snap.bayesian}, {"turn", snap.turn}, {"posterior", posterior}};
  if (snap.bayesian) out["leading"] = snap.leading;
  if (!snap.cards.empty()) {
    json cards = json::array();
    for (const auto& c : snap.cards) {
      cards.push_back({{"word", c.word},
                       {"red", c.probs[0]},
                       {"blue", c.probs[1]},
                       {"bystander", c.probs[2]},
                       {"assassin", c.probs[3]}});
    }
    out["cards"] = cards;
  }
  return {200, out};
}

ServiceResponse PlayService::transcript(const std::string& id) {
  auto s = find(id);
  if (!s) return error(404, "not_found", "no session '" + id + "'");
  std::lock_guard lock(s->mu);
  if (s->role == "guesser" && s->status != kFinished) {
    // The BOARD record lists every category.
    return error(409, "conflict", "transcript is available to a guesser once the game ends");
  }
  return {200, {{"transcript", s->transcript.str()}}};
}

ServiceResponse PlayService::handle(const std::string& method, const std::string& path,
                                    const std::string& body_text) {
  std::vector<std::string> parts;
  std::istringstream in(path);
  std::string part;
  while (std::getline(in, part, '/')) {
    if (!part.empty()) parts.push_back(part);
  }
  json body;
  if (method == "POST" && !body_text.empty()) {
    body = json::parse(body_text, nullptr, false);
    if (body.is_discarded()) return error(400, "bad_request", "body is not valid JSON");
  }
  if (parts.empty() || parts[0] != "sessions" || parts.size() == 2 || parts.size() > 3) {
    return error(404, "not_found", "no route " + method + " " + path);
  }
  if (parts.size() == 1) {
    if (method == "POST") return create_session(body.is_null() ? json::object() : body);
    return error(405, "method_not_allowed", method + " " + path);
  }
  const auto& id = parts[1];
  const auto& action = parts[2];
  if (method == "GET") {
    if (action == "view") return view(id);
    if (action == "beliefs") return beliefs(id);
    if (action == "transcript") return transcript(id);
  } else if (method == "POST") {
    if (action == "clue") return submit_clue(id, body);
    if (action == "guess") return submit_guess(id, body);
    if (action == "agent-step") return agent_step(id);
  }
  return error(404, "not_found", "no route " + method + " " + path);
}

void serve(PlayService& service, const std::string& host, int port) {
  std::stop_source never;
  serve(service, host, port, never.get_token());
}

void serve(PlayService& service, const std::string& host, int port, std::stop_token stop) {
  httplib::Server server;
  auto bridge = [&service](const httplib::Request& req, httplib::Response& res) {
    auto r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/sessions/.*)", bridge);
  server.Post(R"(/sessions(/.*)?)", bridge);
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  std::jthread sweeper([&service, &server, stop](std::stop_token own) {
    while (!own.stop_requested()) {
      if (stop.stop_requested()) {
        server.stop();
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
      service.expire_idle(std::chrono::steady_clock::now());
    }
  });
  if (!server.listen(host, port)) throw Error("cannot listen on " + host + ":" + std::to_string(port));
}

}  // namespace codenames
