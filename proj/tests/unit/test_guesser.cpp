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

#include <doctest.h>

#include <functional>
#include <set>

#include "codenames/bayesian_guesser.hpp"
#include "support.hpp"

using namespace codenames;
using namespace codenames::testing;

namespace {

struct FakeLikelihood : ClueLikelihood {
  std::function<double(std::size_t, const WorldState&)> f;
  int calls = 0;
  double operator()(std::size_t model, const BoardView&, const Clue&,
                    const WorldState& world) override {
    ++calls;
    return f(model, world);
  }
};

BoardView small_view() {
  return make_view({"a", "b", "c", "d"}, {2, 1, 1, 0});
}

std::vector<PartnerModel> models(int n) {
  std::vector<PartnerModel> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(model_of(table_of("m" + std::to_string(i), {{"a", {double(i)}}, {"z", {9}}}), 300,
                           i));
  }
  return out;
}

}  // namespace

TEST_CASE("world sampling: counting consistent worlds") {
  auto view = small_view();
  CHECK(count_consistent_worlds(view) == 12);
  view.revealed[0] = R;
  CHECK(count_consistent_worlds(view) == 6);
  GameRules rules;
  auto full = make_view(std::vector<std::string>(25, "w"), rules.composition);
  CHECK(count_consistent_worlds(full) == doctest::Approx(25.0 * 24 * 23 * 22 * 21 * 20 * 19 * 18 *
                                                         17 / 362880 * 16 * 15 * 14 * 13 * 12 *
                                                         11 * 10 * 9 / 40320 * 8)
                                             .epsilon(1e-9));
}

TEST_CASE("world sampling: two consistent worlds are both enumerated") {
  auto view = make_view({"a", "b", "c"}, {2, 1, 0, 0});
  view.revealed[0] = R;
  Rng rng(1);
  auto s = sample_world_states(view, 10, rng);
  REQUIRE(s.worlds.size() == 2);
  CHECK(s.worlds[0] != s.worlds[1]);
  for (const auto& w : s.worlds) CHECK(w.categories[0] == R);
  CHECK(s.weights == std::vector<double>{1.0, 1.0});
}

TEST_CASE("world sampling: a fully determined board has one world") {
  auto view = make_view({"a", "b", "c"}, {3, 0, 0, 0});
  Rng rng(1);
  auto s = sample_world_states(view, 50, rng);
  REQUIRE(s.worlds.size() == 1);
  CHECK(s.worlds[0] == world_of({R, R, R}));
}

TEST_CASE("world sampling: drawn worlds are distinct, consistent and uniform") {
  GameRules rules;
  std::vector<std::string> words;
  for (int i = 0; i < 25; ++i) words.push_back("w" + std::to_string(i));
  auto view = make_view(words, rules.composition);
  view.revealed[3] = R;
  view.revealed[7] = B;
  Rng rng(2);
  std::vector<double> red(25, 0.0);
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    auto s = sample_world_states(view, 30, rng);
    REQUIRE(s.worlds.size() == 30);
    std::set<std::vector<CardCategory>> distinct;
    for (const auto& w : s.worlds) {
      distinct.insert(w.categories);
      CHECK(w.categories[3] == R);
      CHECK(w.categories[7] == B);
      int reds = 0;
      for (auto c : w.categories) reds += c == R;
      CHECK(reds == 9);
      for (int i = 0; i < 25; ++i) red[i] += (w.categories[i] == R) / 30.0;
    }
    CHECK(distinct.size() == 30);
  }
  for (int i = 0; i < 25; ++i) {
    if (i == 3 || i == 7) continue;
    CHECK(std::abs(red[i] / reps - 8.0 / 23) <= 0.05);
  }
}

TEST_CASE("world sampling: inconsistent views are rejected") {
  auto view = make_view({"a", "b"}, {1, 1, 0, 0});
  view.revealed[0] = R;
  view.revealed[1] = R;
  Rng rng(1);
  CHECK_THROWS_AS(sample_world_states(view, 5, rng), Error);
  CHECK_THROWS_AS(sample_world_states(small_view(), 0, rng), Error);
}

TEST_CASE("history likelihood: product of per-turn model sums, skips ignored") {
  std::vector<WorldState> worlds{world_of({R, B}), world_of({B, R})};
  FakeLikelihood lik;
  lik.f = [](std::size_t m, const WorldState& w) {
    return w.categories[0] == R ? 0.1 * (m + 1) : 0.2;
  };
  auto view = make_view({"a", "b"}, {1, 1, 0, 0});
  std::vector<HistoryEntry> history{{Clue{"x", 1}, view}, {std::nullopt, view}, {Clue{"y", 1}, view}};
  auto h = history_likelihood(worlds, history, 2, lik);
  CHECK(h[0] == doctest::Approx(0.3 * 0.3));
  CHECK(h[1] == doctest::Approx(0.4 * 0.4));
  CHECK(history_likelihood(worlds, {}, 2, lik) == std::vector<double>{1.0, 1.0});
}

TEST_CASE("update: model likelihood ratio 1:3 gives (0.25, 0.75)") {
  auto state = init_guesser(models(2), {});
  auto view = small_view();
  Rng rng(1);
  auto sample = sample_world_states(view, 100, rng);
  FakeLikelihood lik;
  lik.f = [](std::size_t m, const WorldState&) { return m == 0 ? 0.1 : 0.3; };
  auto u = update_model_probabilities(state, sample, view, {"x", 1}, lik);
  CHECK_FALSE(u.skipped);
  CHECK(state.posterior[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(state.posterior[1] == doctest::Approx(0.75).epsilon(1e-12));
  REQUIRE(state.history.size() == 1);
  CHECK(state.history[0].clue == Clue{"x", 1});
  for (double w : sample.weights) CHECK(w == doctest::Approx(0.4));
  CHECK(leading_model_index(state) == 1);
}

TEST_CASE("update: world weights follow the clue") {
  auto state = init_guesser(models(1), {});
  auto view = small_view();
  Rng rng(1);
  auto sample = sample_world_states(view, 100, rng);
  FakeLikelihood lik;
  lik.f = [](std::size_t, const WorldState& w) { return w.categories[0] == R ? 1.0 : 0.0; };
  update_model_probabilities(state, sample, view, {"x", 1}, lik);
  auto probs = card_probabilities(sample, view.unrevealed(), 0, 1.0);
  CHECK(probs.probs[0][0] == doctest::Approx(1.0));
  // Given card a is Red: one Red among the other three.
  CHECK(probs.probs[1][0] == doctest::Approx(1.0 / 3));
}

TEST_CASE("update: an impossible clue is skipped and changes nothing") {
  auto state = init_guesser(models(2), {}, {0.3, 0.7});
  auto view = small_view();
  Rng rng(1);
  auto sample = sample_world_states(view, 100, rng);
  auto before = sample.weights;
  FakeLikelihood lik;
  lik.f = [](std::size_t, const WorldState&) { return 0.0; };
  auto u = update_model_probabilities(state, sample, view, {"x", 1}, lik);
  CHECK(u.skipped);
  CHECK(state.posterior == std::vector<double>{0.3, 0.7});
  REQUIRE(state.history.size() == 1);
  CHECK_FALSE(state.history[0].clue.has_value());
  CHECK(sample.weights == before);
}

TEST_CASE("card probabilities: skip threshold and boost of the first k survivors") {
  WorldSample s;
  s.worlds = {world_of({R, B, R, Y}), world_of({R, R, B, Y}), world_of({B, R, R, Y}),
              world_of({R, Y, R, B})};
  s.weights = {1, 1, 1, 1};
  std::vector<int> ordering{3, 0, 1, 2};
  auto p = card_probabilities(s, ordering, 1, 0.4);
  CHECK(p.probs[1][0] == doctest::Approx(0.5));
  CHECK(p.probs[3][0] == 0.0);
  CHECK(p.survivors == std::vector<int>{0, 1, 2});
  CHECK(p.boosted == std::vector<int>{0});
  CHECK(p.probs[0] == CategoryProbs{1, 0, 0, 0});
  CHECK(p.probs[2][0] == doctest::Approx(0.75));

  auto none = card_probabilities(s, ordering, 2, 1.0);
  CHECK(none.survivors.empty());
  CHECK(none.boosted.empty());

  auto many = card_probabilities(s, ordering, 9, 0.0);
  CHECK(many.boosted == std::vector<int>{0, 1, 2});
}

TEST_CASE("card probabilities: weights are normalized, all-zero means uniform") {
  WorldSample s;
  s.worlds = {world_of({R, B}), world_of({B, R})};
  s.weights = {3, 1};
  auto p = card_probabilities(s, std::vector<int>{0, 1}, 0, 1.0);
  CHECK(p.probs[0][0] == doctest::Approx(0.75));
  CHECK(p.probs[0][1] == doctest::Approx(0.25));
  s.weights = {0, 0};
  auto u = card_probabilities(s, std::vector<int>{0, 1}, 0, 1.0);
  CHECK(u.probs[0][0] == doctest::Approx(0.5));
}

TEST_CASE("expected card value") {
  CHECK(expected_card_value({1, 0, 0, 0}, 9) == 1.0);
  CHECK(expected_card_value({0, 0, 0, 1}, 9) == -9.0);
  CHECK(expected_card_value({0.5, 0.25, 0.25, 0}, 9) == doctest::Approx(0.25));
}

TEST_CASE("select guess: certain reds then stop") {
  WorldSample s;
  s.worlds = {world_of({B, R, R, Y})};
  s.weights = {1};
  GuesserConfig config;
  config.skip_threshold = 1.0;
  auto plan = select_guess(s, std::vector<int>{0, 1, 2, 3}, 2, config, 2);
  // Both Reds, then nothing with positive value remains.
  CHECK(plan.cards == GuessSequence{1, 2});
  REQUIRE(plan.pick_probabilities.size() == 2);
  CHECK(plan.pick_probabilities[0][0] == 1.0);
}

TEST_CASE("select guess: the first pick is mandatory even below threshold") {
  WorldSample s;
  s.worlds = {world_of({R, B, Y}), world_of({B, Y, R}), world_of({Y, R, B})};
  s.weights = {1, 1, 1};
  GuesserConfig config;
  config.belief_threshold = 0.9;
  auto plan = select_guess(s, std::vector<int>{2, 1, 0}, 1, config, 1);
  REQUIRE(plan.cards.size() == 1);
  // All three tie at value 0; the strict comparison keeps the first in order.
  CHECK(plan.cards[0] == 2);
}

TEST_CASE("select guess: the boost makes the clue's nearest cards certain") {
  WorldSample s;
  s.worlds = {world_of({R, B, R, Y}), world_of({B, R, R, Y}), world_of({R, R, B, Y})};
  s.weights = {1, 1, 1};
  GuesserConfig config;
  config.skip_threshold = 0.0;
  auto plan = select_guess(s, std::vector<int>{1, 0, 2, 3}, 1, config, 2);
  REQUIRE_FALSE(plan.cards.empty());
  CHECK(plan.cards[0] == 1);
  CHECK(plan.pick_probabilities[0] == CategoryProbs{1, 0, 0, 0});
  CHECK_THROWS_AS(select_guess(s, std::vector<int>{0}, 0, config, 2), Error);
}

TEST_CASE("reveal: a zero-probability category resets the guesser") {
  auto state = init_guesser(models(2), {});
  state.posterior = {0.9, 0.1};
  state.history.push_back({Clue{"x", 1}, small_view()});
  state.pick_probabilities = {{0.5, 0.5, 0, 0}, {1, 0, 0, 0}};
  CHECK_FALSE(update_on_reveal(state, 0, B));
  CHECK(state.posterior == std::vector<double>{0.9, 0.1});
  CHECK(update_on_reveal(state, 1, B));
  CHECK(state.posterior == state.prior);
  CHECK(state.history.empty());
  CHECK_THROWS_AS(update_on_reveal(state, 5, R), Error);
}

TEST_CASE("leading model: argmax with ties by rank") {
  auto state = init_guesser(models(3), {});
  CHECK(leading_model_index(state) == 0);
  state.posterior = {0.2, 0.4, 0.4};
  CHECK(leading_model_index(state) == 1);
  state.models[2].tie_rank = -1;
  CHECK(leading_model(state).id == "m2");
}

TEST_CASE("init guesser: validation") {
  GuesserConfig bad;
  bad.belief_threshold = 1.5;
  CHECK_THROWS_AS(init_guesser(models(1), bad), Error);
  CHECK_THROWS_AS(init_guesser({}, {}), Error);
  CHECK_THROWS_AS(init_guesser(models(2), {}, {0.2, 0.2}), Error);
}

TEST_CASE("level-0 clue likelihood: number must match, Voronoi scores the word") {
  auto t = table_of("t", {{"r1", {10}}, {"b1", {-10}}, {"hot", {9}}, {"cold", {-9}}});
  auto m = model_of(t);
  auto vor = std::make_shared<const VoronoiEstimator>(t, nullptr, VoronoiKey{"t", 0.0, 10, 1, 500});
  Level0ClueLikelihood lik({m}, {vor});
  auto view = make_view({"r1", "b1"}, {1, 1, 0, 0});
  auto red_first = world_of({R, B});
  auto blue_first = world_of({B, R});
  CHECK(lik(0, view, {"hot", 1}, red_first) == 1.0);
  CHECK(lik(0, view, {"hot", 2}, red_first) == 0.0);
  CHECK(lik(0, view, {"cold", 1}, red_first) == 0.0);
  CHECK(lik(0, view, {"cold", 1}, blue_first) == 1.0);
  CHECK(lik(0, view, {"martian", 1}, red_first) == 0.0);
}

TEST_CASE("bayesian guesser: deduces the Red card from a noiseless clue") {
  auto t = table_of("t", {{"r1", {10}}, {"b1", {-10}}, {"y1", {0}}, {"hot", {9}}, {"cold", {-9}}});
  auto m = model_of(t);
  auto vor = std::make_shared<const VoronoiEstimator>(t, nullptr, VoronoiKey{"t", 0.0, 10, 1, 500});
  GuesserConfig config;
  config.world_samples = 100;
  auto state = init_guesser({m}, config);
  BayesianGuesser g(std::move(state), std::make_unique<Level0ClueLikelihood>(
                                          std::vector<PartnerModel>{m},
                                          std::vector<std::shared_ptr<const VoronoiEstimator>>{vor}),
                    7);
  auto view = make_view({"y1", "r1", "b1"}, {1, 1, 1, 0});
  auto guess = g.guess(view, {"hot", 1});
  REQUIRE_FALSE(guess.empty());
  CHECK(guess[0] == 1);
  CHECK(g.last_ordering().front() == 1);
  CHECK_FALSE(g.observe_reveal(0, R));
}

TEST_CASE("boost ordering: clue distance, lexicographic when unknown") {
  auto t = table_of("t", {{"b", {1}}, {"a", {3}}, {"c", {2}}, {"clue", {0}}});
  auto m = model_of(t);
  auto view = make_view({"a", "b", "c"}, {1, 1, 1, 0});
  CHECK(boost_ordering(m, view, {"clue", 1}) == std::vector<int>{1, 2, 0});
  CHECK(boost_ordering(m, view, {"nope", 1}) == std::vector<int>{0, 1, 2});
}
