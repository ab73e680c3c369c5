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

// Python bindings. Thin wrappers; JSON bodies cross the boundary as strings
// and are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "codenames/harness.hpp"
#include "codenames/service.hpp"
#include "codenames/synthetic.hpp"

namespace py = pybind11;
using namespace codenames;

namespace {

struct Game {
  WorldState world;
  BoardView view;

  std::vector<std::string> categories() const {
    std::vector<std::string> out;
    for (auto c : world.categories) out.emplace_back(to_string(c));
    return out;
  }

  std::vector<std::optional<std::string>> revealed() const {
    std::vector<std::optional<std::string>> out;
    for (const auto& r : view.revealed) {
      out.push_back(r ? std::optional<std::string>(std::string(to_string(*r))) : std::nullopt);
    }
    return out;
  }

  GuessSequence cards(const std::vector<std::string>& words) const {
    GuessSequence out;
    for (const auto& w : words) {
      auto c = view.card_index(w);
      if (!c) throw IllegalAction("guesses must be words on the board", "not on the board: " + w);
      out.push_back(*c);
    }
    return out;
  }

  std::vector<std::pair<std::string, std::string>> play_turn(const std::string& word, int number,
                                                             const std::vector<std::string>& guess) {
    Clue clue{word, number};
    validate_clue(view, clue);
    auto picks = cards(guess);
    validate_guess(view, clue, picks);
    auto result = resolve_turn(world, view, clue, picks);
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& r : result.observed) {
      out.emplace_back(view.words[r.card], std::string(to_string(r.category)));
    }
    return out;
  }
};

py::dict outcome_dict(const GameOutcome& o) {
  py::dict d;
  d["win"] = o.win;
  d["score"] = o.score;
  d["turns"] = o.turns;
  d["blue_guessed"] = o.blue_guessed;
  d["assassin"] = o.assassin;
  return d;
}

std::shared_ptr<ModelLibrary> synthetic_library(int count, int vocab, int dim, int topics,
                                                std::uint64_t seed, bool disjoint,
                                                const std::string& prefix, int neighbors,
                                                int voronoi_pool) {
  SyntheticOptions o;
  o.prefix = prefix;
  o.count = count;
  o.vocab = vocab;
  o.dim = dim;
  o.topics = topics;
  o.seed = seed;
  o.disjoint = disjoint;
  LibraryOptions lo;
  lo.neighbors = neighbors;
  lo.voronoi_pool = voronoi_pool;
  auto lib = std::make_shared<ModelLibrary>(lo);
  for (auto& t : synthetic_family(o)) lib->add(std::make_shared<const EmbeddingTable>(std::move(t)));
  return lib;
}

std::shared_ptr<ModelLibrary> file_library(const std::map<std::string, std::filesystem::path>& files,
                                           int neighbors, int voronoi_pool, bool normalize) {
  LibraryOptions lo;
  lo.neighbors = neighbors;
  lo.voronoi_pool = voronoi_pool;
  lo.normalize = normalize;
  auto lib = std::make_shared<ModelLibrary>(lo);
  for (const auto& [name, path] : files) {
    lib->add(std::make_shared<const EmbeddingTable>(load_embeddings(path, normalize, name)));
  }
  return lib;
}

std::vector<std::string> pool_of(const ModelLibrary& lib, std::optional<std::vector<std::string>> names) {
  auto list = names ? *names : lib.names();
  return lib.word_pool(list);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bayesian Codenames agents";

  auto error = py::register_exception<Error>(m, "CodenamesError", PyExc_ValueError);
  py::register_exception<IllegalAction>(m, "IllegalAction", error.ptr());

  py::class_<ModelLibrary, std::shared_ptr<ModelLibrary>>(m, "Library")
      .def_static("synthetic", &synthetic_library, py::arg("count") = 5, py::arg("vocab") = 300,
                  py::arg("dim") = 24, py::arg("topics") = 20, py::arg("seed") = 1,
                  py::arg("disjoint") = false, py::arg("prefix") = "syn",
                  py::arg("neighbors") = 300, py::arg("voronoi_pool") = 500)
      .def_static("from_files", &file_library, py::arg("files"), py::arg("neighbors") = 300,
                  py::arg("voronoi_pool") = 500, py::arg("normalize") = true)
      .def("names", &ModelLibrary::names)
      .def("has", [](const ModelLibrary& l, const std::string& n) { return l.has(n); })
      .def("word_pool", &pool_of, py::arg("names") = py::none());

  py::class_<Game>(m, "Game")
      .def(py::init([](const std::vector<std::string>& pool, std::uint64_t seed, int red, int blue,
                       int bystander, int assassin, int turn_limit) {
             GameRules rules;
             rules.composition = {red, blue, bystander, assassin};
             rules.board_size = rules.composition.total();
             rules.turn_limit = turn_limit;
             Rng rng(seed);
             auto [world, view] = new_game(pool, rules, rng);
             return Game{std::move(world), std::move(view)};
           }),
           py::arg("pool"), py::arg("seed") = 0, py::arg("red") = 9, py::arg("blue") = 8,
           py::arg("bystander") = 7, py::arg("assassin") = 1, py::arg("turn_limit") = 25)
      .def_property_readonly("words", [](const Game& g) { return g.view.words; })
      .def_property_readonly("categories", &Game::categories)
      .def_property_readonly("revealed", &Game::revealed)
      .def_property_readonly("turn", [](const Game& g) { return g.view.turn; })
      .def_property_readonly("terminal", [](const Game& g) { return is_terminal(g.view); })
      .def("remaining", [](const Game& g, const std::string& c) {
        return g.view.remaining(parse_category(c));
      })
      .def("play_turn", &Game::play_turn, py::arg("word"), py::arg("number"), py::arg("guess"))
      .def("outcome", [](const Game& g) { return outcome_dict(game_outcome(g.view)); });

  m.def(
      "level0_clue",
      [](const ModelLibrary& lib, const std::string& model, const Game& g) {
        auto c = level0_clue(lib.model(model), g.world, g.view);
        return std::make_pair(c.word, c.number);
      },
      py::arg("library"), py::arg("model"), py::arg("game"));
  m.def(
      "level0_guess",
      [](const ModelLibrary& lib, const std::string& model, const Game& g, const std::string& word,
         int number) {
        std::vector<std::string> out;
        for (int c : level0_guess(lib.model(model), g.view, Clue{word, number}).cards) {
          out.push_back(g.view.words[c]);
        }
        return out;
      },
      py::arg("library"), py::arg("model"), py::arg("game"), py::arg("word"), py::arg("number"));

  m.def(
      "turn_utility",
      [](const std::vector<std::string>& categories, int red_total) {
        std::vector<CardCategory> cats;
        for (const auto& c : categories) cats.push_back(parse_category(c));
        return turn_utility(std::span<const CardCategory>(cats), red_total);
      },
      py::arg("categories"), py::arg("red_total") = 9);

  m.def(
      "play_game",
      [](const ModelLibrary& lib, const std::string& spymaster, const std::string& guesser,
         const std::string& environment, std::uint64_t seed, int index,
         std::optional<std::vector<std::string>> pool) {
        auto env = parse_environment(environment);
        auto words = pool ? *pool : lib.word_pool(lib.names());
        auto seeds = game_seeds(seed, spymaster, guesser, env, index, true);
        GameRecord rec;
        {
          py::gil_scoped_release release;
          rec = play_game(lib, parse_agent_spec(spymaster), parse_agent_spec(guesser), env,
                          GameRules{}, words, seeds);
        }
        py::dict d = outcome_dict(rec.outcome);
        d["invalid"] = rec.invalid;
        d["diagnostic"] = rec.diagnostic;
        d["transcript"] = rec.transcript.str();
        py::list beliefs;
        for (const auto& b : rec.spymaster_beliefs) {
          py::dict snap;
          for (const auto& [name, p] : b.posterior) snap[py::str(name)] = p;
          beliefs.append(snap);
        }
        d["spymaster_posteriors"] = beliefs;
        return d;
      },
      py::arg("library"), py::arg("spymaster"), py::arg("guesser"),
      py::arg("environment") = "deterministic", py::arg("seed") = 0, py::arg("index") = 0,
      py::arg("pool") = py::none());

  m.def(
      "run_config",
      [](const std::string& text, std::optional<int> workers) {
        std::istringstream in(text);
        auto config = parse_config(in);
        if (workers) config.workers = *workers;
        py::gil_scoped_release release;
        auto library = build_library(config);
        return to_csv(run_matrix(config, *library).rows, config.timing);
      },
      py::arg("text"), py::arg("workers") = py::none(),
      "Runs an INI experiment config and returns the results CSV.");

  py::class_<PlayService>(m, "_Service")
      .def(py::init([](std::shared_ptr<ModelLibrary> lib, int idle_timeout) {
             ServiceOptions o;
             o.idle_timeout = std::chrono::seconds(idle_timeout);
             auto pool = lib->word_pool(lib->names());
             return std::make_unique<PlayService>(lib, std::move(pool), o);
           }),
           py::arg("library"), py::arg("idle_timeout") = 3600)
      .def(
          "handle",
          [](PlayService& s, const std::string& method, const std::string& path,
             const std::string& body) {
            ServiceResponse r;
            {
              py::gil_scoped_release release;
              r = s.handle(method, path, body);
            }
            return std::make_pair(r.status, r.body.dump());
          },
          py::arg("method"), py::arg("path"), py::arg("body") = "")
      .def("session_count", &PlayService::session_count);
}
