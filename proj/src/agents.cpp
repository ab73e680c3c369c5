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

#include "codenames/agents.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace codenames {

double AgentSpec::param(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(const std::string& text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("agent spec: bad number '" + text + "' in " + where);
  }
  return value;
}

const std::set<std::string>& allowed_params(bool bayesian, const std::string& role) {
  static const std::set<std::string> none;
  static const std::set<std::string> spymaster = {"noise", "samples", "persist"};
  static const std::set<std::string> guesser = {"skip", "belief", "noise", "worlds", "vsamples"};
  if (!bayesian) return none;
  return role == "spymaster" ? spymaster : guesser;
}

}  // namespace

AgentSpec parse_agent_spec(std::string_view text) {
  AgentSpec spec;
  spec.text = std::string(text);
  auto parts = split(text, ':');
  if (parts.size() < 3) throw Error("agent spec '" + spec.text + "': expected kind:role:models");
  if (parts[0] == "bayes") {
    spec.bayesian = true;
  } else if (parts[0] != "static") {
    throw Error("agent spec '" + spec.text + "': unknown kind '" + parts[0] + "'");
  }
  spec.role = parts[1];
  if (spec.role != "spymaster" && spec.role != "guesser") {
    throw Error("agent spec '" + spec.text + "': unknown role '" + spec.role + "'");
  }
  for (auto& m : split(parts[2], ',')) {
    if (m.empty()) throw Error("agent spec '" + spec.text + "': empty model name");
    spec.models.push_back(m);
  }
  if (!spec.bayesian && spec.models.size() != 1) {
    throw Error("agent spec '" + spec.text + "': static agents take exactly one embedding");
  }
  const auto& allowed = allowed_params(spec.bayesian, spec.role);
  for (std::size_t i = 3; i < parts.size(); ++i) {
    auto eq = parts[i].find('=');
    if (eq == std::string::npos) {
      throw Error("agent spec '" + spec.text + "': expected key=value, got '" + parts[i] + "'");
    }
    auto key = parts[i].substr(0, eq);
    if (!allowed.contains(key)) {
      throw Error("agent spec '" + spec.text + "': unknown parameter '" + key + "'");
    }
    spec.params[key] = parse_number(parts[i].substr(eq + 1), spec.text);
  }
  return spec;
}

namespace {

std::vector<CardBelief> card_beliefs(const BoardView& view, const CardProbabilities& probs,
                                     std::span<const int> ordering) {
  std::vector<CardBelief> out;
  for (int card : ordering) {
    if (card < static_cast<int>(probs.probs.size())) {
      out.push_back({view.words[card], probs.probs[card]});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CardBelief& a, const CardBelief& b) {
    return a.probs[0] > b.probs[0];
  });
  return out;
}

class StaticSpymaster : public SpymasterAgent {
 public:
  explicit StaticSpymaster(PartnerModel model) : model_(std::move(model)) {}
  Clue give_clue(const WorldState& world, const BoardView& view) override {
    return level0_clue(model_, world, view);
  }
  const PartnerModel& semantics() const override { return model_; }

 private:
  PartnerModel model_;
};

class StaticGuesser : public GuesserAgent {
 public:
  explicit StaticGuesser(PartnerModel model) : model_(std::move(model)) {}
  GuessSequence guess(const BoardView& view, const ReceivedClue& received) override {
    const auto& table = *model_.embedding;
    auto id = table.find(received.clue.word);
    if (id && received.vector_noise > 0.0 && received.channel_rng) {
      Vector noisy =
          table.project(perturb(table.raw_vector(*id), received.vector_noise, *received.channel_rng));
      return level0_guess(model_, view, noisy, received.clue.number);
    }
    return level0_guess(model_, view, received.clue).cards;
  }

 private:
  PartnerModel model_;
};

class BayesianSpymasterAgent : public SpymasterAgent {
 public:
  BayesianSpymasterAgent(SpymasterBeliefs beliefs, SpymasterConfig config, std::uint64_t seed)
      : beliefs_(std::move(beliefs)), config_(config), rng_(seed) {}

  Clue give_clue(const WorldState& world, const BoardView& view) override {
    auto candidates = spymaster_candidates(beliefs_, world, view);
    return get_clue(beliefs_, world, view, candidates, config_, rng_);
  }

  void observe_turn(const Clue& given, std::span<const Reveal> observed) override {
    ObservedAction action;
    for (const auto& r : observed) action.push_back(r.card);
    observe_guess(beliefs_, given, action);
    ++turn_;
  }

  BeliefSnapshot beliefs() const override {
    BeliefSnapshot s;
    s.bayesian = true;
    s.turn = turn_;
    for (std::size_t i = 0; i < beliefs_.models.size(); ++i) {
      s.posterior.emplace_back(beliefs_.models[i].id, beliefs_.posterior[i]);
    }
    s.leading = beliefs_.models[beliefs_.leading()].id;
    return s;
  }

  const PartnerModel& semantics() const override { return beliefs_.models[beliefs_.leading()]; }

 private:
  SpymasterBeliefs beliefs_;
  SpymasterConfig config_;
  Rng rng_;
  int turn_ = 0;
};

class BayesianGuesserAgent : public GuesserAgent {
 public:
  BayesianGuesserAgent(GuesserState state, std::unique_ptr<ClueLikelihood> likelihood,
                       std::uint64_t seed)
      : guesser_(std::move(state), std::move(likelihood), seed) {}

  GuessSequence guess(const BoardView& view, const ReceivedClue& received) override {
    Clue clue = received.clue;
    if (received.vector_noise > 0.0 && received.channel_rng) clue = snap(view, received);
    view_ = view;
    auto out = guesser_.guess(view, clue);
    ++turn_;
    return out;
  }

  void observe_reveal(int pick_index, const Reveal& reveal) override {
    guesser_.observe_reveal(pick_index, reveal.category);
    if (view_) view_->revealed[reveal.card] = reveal.category;
  }

  BeliefSnapshot beliefs() const override {
    const auto& st = guesser_.state();
    BeliefSnapshot s;
    s.bayesian = true;
    s.turn = turn_;
    for (std::size_t i = 0; i < st.models.size(); ++i) {
      s.posterior.emplace_back(st.models[i].id, st.posterior[i]);
    }
    s.leading = leading_model(st).id;
    if (view_) {
      std::vector<int> still_hidden;
      for (int card : guesser_.last_ordering()) {
        if (!view_->is_revealed(card)) still_hidden.push_back(card);
      }
      s.cards = card_beliefs(*view_, guesser_.last_probabilities(), still_hidden);
    }
    return s;
  }

 private:
  // The guesser reads a noisy clue vector as the nearest non-board word in
  // its leading model's vocabulary.
  Clue snap(const BoardView& view, const ReceivedClue& received) const {
    const auto& model = leading_model(guesser_.state());
    const auto& table = *model.embedding;
    auto id = table.find(received.clue.word);
    if (!id) return received.clue;
    Vector noisy =
        table.project(perturb(table.raw_vector(*id), received.vector_noise, *received.channel_rng));
    std::unordered_set<WordId> board;
    for (const auto& w : view.words) {
      if (auto b = table.find(w)) board.insert(*b);
    }
    std::vector<Neighbor> best;
    if (model.index) {
      best = nearest_words(table, *model.index, *id, noisy, 1, board);
    } else {
      best = nearest_words(table, noisy, 1, board);
    }
    if (best.empty()) return received.clue;
    return {table.word(best.front().word), received.clue.number};
  }

  BayesianGuesser guesser_;
  std::optional<BoardView> view_;
  int turn_ = 0;
};

bool is_single_token(const std::string& w) {
  return !w.empty() && w.find_first_of(" _-") == std::string::npos;
}

}  // namespace

ModelLibrary::ModelLibrary(LibraryOptions options) : options_(std::move(options)) {}

void ModelLibrary::add(std::shared_ptr<const EmbeddingTable> table,
                       std::shared_ptr<const NeighborIndex> index) {
  if (!table) throw Error("ModelLibrary::add: null embedding");
  const std::string name = table->name();
  if (entries_.contains(name)) throw Error("duplicate embedding name '" + name + "'");
  if (!index && !options_.cache_dir.empty()) {
    auto path = options_.cache_dir /
                ("neighbors_" + name + "_k" + std::to_string(options_.neighbors) + ".txt");
    if (std::filesystem::exists(path)) {
      index = std::make_shared<NeighborIndex>(NeighborIndex::load(*table, path));
    }
  }
  if (!index) {
    // Lists are needed for board words only (clue candidates and pools come
    // from neighbours of board cards).
    std::vector<WordId> queries;
    if (!options_.board_words.empty()) {
      for (const auto& w : options_.board_words) {
        if (auto id = table->find(w)) queries.push_back(*id);
      }
    }
    index = std::make_shared<NeighborIndex>(
        NeighborIndex::build(*table, options_.neighbors, queries));
  }
  entries_.emplace(name, Entry{std::move(table), std::move(index)});
}

bool ModelLibrary::has(std::string_view name) const { return entries_.contains(name); }

std::vector<std::string> ModelLibrary::names() const {
  std::vector<std::string> out;
  for (const auto& [name, e] : entries_) out.push_back(name);
  return out;
}

const ModelLibrary::Entry& ModelLibrary::entry(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error("unknown embedding '" + std::string(name) + "'");
  return it->second;
}

std::shared_ptr<const EmbeddingTable> ModelLibrary::embedding(std::string_view name) const {
  return entry(name).table;
}

PartnerModel ModelLibrary::model(std::string_view name, int tie_rank, double noise) const {
  const auto& e = entry(name);
  return {std::string(name), e.table, e.index, 0, noise, tie_rank};
}

std::shared_ptr<const VoronoiEstimator> ModelLibrary::voronoi(std::string_view name, double sigma,
                                                              int samples) const {
  const auto& e = entry(name);
  std::lock_guard lock(voronoi_mu_);
  auto key = std::make_tuple(std::string(name), sigma, samples);
  auto it = voronoi_.find(key);
  if (it != voronoi_.end()) return it->second;
  VoronoiKey vk{std::string(name), sigma, samples, options_.voronoi_seed, options_.voronoi_pool};
  auto est = std::make_shared<VoronoiEstimator>(e.table, e.index, vk);
  if (!options_.cache_dir.empty() && sigma > 0.0) {
    VoronoiCache probe;
    probe.key = vk;
    auto path = options_.cache_dir / probe.file_name();
    if (std::filesystem::exists(path)) est->preload(VoronoiCache::load(path));
  }
  voronoi_.emplace(key, est);
  return est;
}

std::vector<std::string> ModelLibrary::word_pool(std::span<const std::string> embeddings) const {
  std::vector<std::string> base;
  if (!options_.board_words.empty()) {
    base = options_.board_words;
  } else {
    if (embeddings.empty()) throw Error("word_pool: no embeddings named");
    base = entry(embeddings.front()).table->words();
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& w : base) {
    if (!is_single_token(w) || !seen.insert(w).second) continue;
    bool everywhere = std::all_of(embeddings.begin(), embeddings.end(), [&](const std::string& e) {
      return entry(e).table->contains(w);
    });
    if (everywhere) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::unique_ptr<SpymasterAgent> ModelLibrary::make_spymaster(const AgentSpec& spec,
                                                             std::uint64_t seed) const {
  if (spec.role != "spymaster") throw Error("'" + spec.text + "' is not a spymaster spec");
  if (!spec.bayesian) return std::make_unique<StaticSpymaster>(model(spec.models.front()));
  SpymasterConfig config;
  config.assumed_noise = spec.param("noise", 0.0);
  config.samples = static_cast<int>(spec.param("samples", 10));
  config.persist_counts = spec.param("persist", 1.0) != 0.0;
  std::vector<PartnerModel> models;
  for (std::size_t i = 0; i < spec.models.size(); ++i) {
    models.push_back(model(spec.models[i], static_cast<int>(i), config.assumed_noise));
  }
  return std::make_unique<BayesianSpymasterAgent>(init_beliefs(std::move(models)), config, seed);
}

std::unique_ptr<GuesserAgent> ModelLibrary::make_guesser(const AgentSpec& spec,
                                                         std::uint64_t seed) const {
  if (spec.role != "guesser") throw Error("'" + spec.text + "' is not a guesser spec");
  if (!spec.bayesian) return std::make_unique<StaticGuesser>(model(spec.models.front()));
  GuesserConfig config;
  config.skip_threshold = spec.param("skip", 1.0);
  config.belief_threshold = spec.param("belief", 0.0);
  config.noise = spec.param("noise", 0.0);
  config.world_samples = static_cast<int>(spec.param("worlds", 1000));
  config.voronoi_samples = static_cast<int>(spec.param("vsamples", 1000));
  std::vector<PartnerModel> models;
  std::vector<std::shared_ptr<const VoronoiEstimator>> estimators;
  for (std::size_t i = 0; i < spec.models.size(); ++i) {
    models.push_back(model(spec.models[i], static_cast<int>(i), config.noise));
    estimators.push_back(voronoi(spec.models[i], config.noise, config.voronoi_samples));
  }
  auto likelihood = std::make_unique<Level0ClueLikelihood>(models, std::move(estimators));
  return std::make_unique<BayesianGuesserAgent>(init_guesser(std::move(models), config),
                                                std::move(likelihood), seed);
}

}  // namespace codenames
