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

#include "codenames/bayesian_spymaster.hpp"
#include "support.hpp"

using namespace codenames;
using namespace codenames::testing;

namespace {

std::vector<PartnerModel> four_models() {
  std::vector<PartnerModel> out;
  for (int i = 0; i < 4; ++i) {
    auto t = table_of("m" + std::to_string(i), {{"a", {double(i)}}, {"b", {1}}});
    out.push_back(model_of(t, 300, i));
  }
  return out;
}

}  // namespace

TEST_CASE("init_beliefs: uniform prior and validation") {
  auto b = init_beliefs(four_models());
  REQUIRE(b.posterior.size() == 4);
  for (double p : b.posterior) CHECK(p == 0.25);
  CHECK(b.leading() == 0);

  CHECK_THROWS_AS(init_beliefs({}), Error);
  CHECK_THROWS_AS(init_beliefs(four_models(), {0.5, 0.5, 0.5, 0.5}), Error);
  CHECK_THROWS_AS(init_beliefs(four_models(), {0.5, 0.5}), Error);
  auto dup = four_models();
  dup[1].id = dup[0].id;
  CHECK_THROWS_AS(init_beliefs(dup), Error);
  auto custom = init_beliefs(four_models(), {0.1, 0.2, 0.3, 0.4});
  CHECK(custom.leading() == 3);
}

TEST_CASE("observe_guess: pseudo-count ratio sets the posterior") {
  auto models = four_models();
  models.resize(2);
  auto b = init_beliefs(models);
  Clue clue{"sky", 2};
  ObservedAction seen{3, 1};
  b.counts[{0, "sky", 2}][seen] = 3;
  b.counts[{1, "sky", 2}][seen] = 1;
  observe_guess(b, clue, seen);
  CHECK(b.posterior[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(b.posterior[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("observe_guess: an unseen action leaves the posterior unchanged") {
  auto b = init_beliefs(four_models(), {0.1, 0.2, 0.3, 0.4});
  b.counts[{2, "sky", 1}][{5}] = 9;
  observe_guess(b, {"sky", 1}, {7});
  CHECK(b.posterior == std::vector<double>{0.1, 0.2, 0.3, 0.4});
  observe_guess(b, {"sea", 1}, {5});
  for (int i = 0; i < 4; ++i) CHECK(b.posterior[i] == doctest::Approx(b.prior[i]).epsilon(1e-15));
}

TEST_CASE("observe_guess: sequential updates equal one batched product") {
  auto b = init_beliefs(four_models());
  const long c1[4] = {2, 5, 1, 3}, c2[4] = {7, 1, 4, 2};
  for (int g = 0; g < 4; ++g) {
    b.counts[{g, "x", 1}][{0}] = c1[g];
    b.counts[{g, "y", 2}][{1, 2}] = c2[g];
  }
  observe_guess(b, {"x", 1}, {0});
  observe_guess(b, {"y", 2}, {1, 2});
  double z = 0.0;
  for (int g = 0; g < 4; ++g) z += 0.25 * c1[g] * c2[g];
  for (int g = 0; g < 4; ++g) {
    CHECK(b.posterior[g] == doctest::Approx(0.25 * c1[g] * c2[g] / z).epsilon(1e-12));
  }
}

TEST_CASE("get_observed_action: stops at the first non-Red card") {
  auto world = world_of({R, R, B, R, A});
  CHECK(get_observed_action(std::vector<int>{0, 2, 3}, world) == ObservedAction{0, 2});
  CHECK(get_observed_action(std::vector<int>{0, 1, 3}, world) == ObservedAction{0, 1, 3});
  CHECK(get_observed_action(std::vector<int>{4, 0}, world) == ObservedAction{4});
}

TEST_CASE("get_sum_distance: leading Red prefix only") {
  auto t = table_of("t", {{"r1", {1}}, {"r2", {3}}, {"b1", {2}}});
  auto view = make_view({"r1", "r2", "b1"}, {2, 1, 0, 0});
  auto world = world_of({R, R, B});
  Vector clue{0};
  CHECK(get_sum_distance(clue, std::vector<int>{0, 1}, world, *t, view) == doctest::Approx(4.0));
  CHECK(get_sum_distance(clue, std::vector<int>{0, 2, 1}, world, *t, view) == doctest::Approx(1.0));
  CHECK(get_sum_distance(clue, std::vector<int>{2}, world, *t, view) == 0.0);
}

TEST_CASE("get_clue: full ties resolve to the lexicographically first word") {
  auto t = table_of("t", {{"r1", {0}}, {"b1", {10}}, {"beta", {-1}}, {"alpha", {1}}});
  auto b = init_beliefs({model_of(t)});
  auto view = make_view({"r1", "b1"}, {1, 1, 0, 0});
  auto world = world_of({R, B});
  auto cands = spymaster_candidates(b, world, view);
  CHECK(cands == std::vector<std::string>{"alpha", "beta"});
  Rng rng(1);
  SpymasterConfig config;
  config.samples = 10;
  CHECK(get_clue(b, world, view, cands, config, rng) == Clue{"alpha", 1});
  // Every evaluated (model, word, number) gained `samples` observations.
  CHECK(b.count(0, {"alpha", 1}, {0}) == 11);
  CHECK(b.count(0, {"beta", 1}, {0}) == 11);
  CHECK(b.count(0, {"alpha", 1}, {1}) == 1);
}

TEST_CASE("get_clue: the dominant model decides") {
  auto a = table_of("A", {{"r1", {0}}, {"r2", {1}}, {"b1", {10}}, {"aa", {0.5}}, {"cc", {2}}});
  auto bt = table_of("B", {{"r1", {0}}, {"r2", {10}}, {"b1", {1}}, {"aa", {0.4}}, {"cc", {10}}});
  auto view = make_view({"r1", "r2", "b1"}, {2, 1, 0, 0});
  auto world = world_of({R, R, B});
  SpymasterConfig config;
  Rng rng(3);

  auto lean_a = init_beliefs({model_of(a, 300, 0), model_of(bt, 300, 1)}, {0.99, 0.01});
  auto cands = spymaster_candidates(lean_a, world, view);
  ClueSearchReport report;
  CHECK(get_clue(lean_a, world, view, cands, config, rng, &report) == Clue{"aa", 2});
  CHECK_FALSE(report.used_fallback);

  auto lean_b = init_beliefs({model_of(a, 300, 0), model_of(bt, 300, 1)}, {0.01, 0.99});
  CHECK(get_clue(lean_b, world, view, cands, config, rng) == Clue{"cc", 1});
}

TEST_CASE("get_clue: noiseless single model matches the level-0 spymaster") {
  Rng rng(5);
  std::normal_distribution<double> d(0.0, 1.0);
  Entries entries;
  for (int i = 0; i < 50; ++i) {
    Vector v(3);
    for (auto& x : v) x = d(rng);
    entries.push_back({"w" + std::to_string(100 + i), v});
  }
  auto t = table_of("t", entries);
  auto model = model_of(t, 60);
  std::vector<std::string> words = t->words();
  for (int trial = 0; trial < 25; ++trial) {
    std::shuffle(words.begin(), words.end(), rng);
    auto view = make_view({words.begin(), words.begin() + 10}, {4, 3, 2, 1});
    std::vector<CardCategory> cats{R, R, R, R, B, B, B, Y, Y, A};
    std::shuffle(cats.begin(), cats.end(), rng);
    WorldState world{cats};
    auto b = init_beliefs({model});
    auto cands = spymaster_candidates(b, world, view);
    SpymasterConfig config;
    config.samples = 1;
    CHECK(get_clue(b, world, view, cands, config, rng) == level0_clue(model, world, view));
  }
}

TEST_CASE("get_clue: noisy search is reproducible from the seed") {
  auto t = table_of("t", {{"r1", {0.1, 0}}, {"r2", {1, 0}}, {"b1", {0, 3}}, {"y1", {5, 5}},
                          {"aa", {0.5, 0.2}}, {"bb", {0.4, 2}}, {"cc", {3, 1}}}, true);
  auto view = make_view({"r1", "r2", "b1", "y1"}, {2, 1, 1, 0});
  auto world = world_of({R, R, B, Y});
  SpymasterConfig config;
  config.assumed_noise = 0.3;
  config.samples = 20;
  auto run = [&] {
    auto b = init_beliefs({model_of(t)});
    Rng rng(42);
    auto cands = spymaster_candidates(b, world, view);
    return std::pair{get_clue(b, world, view, cands, config, rng), b.counts};
  };
  auto first = run();
  auto second = run();
  CHECK(first.first == second.first);
  CHECK(first.second == second.second);
}
