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

#ifndef CODENAMES_BAYESIAN_SPYMASTER_HPP_
#define CODENAMES_BAYESIAN_SPYMASTER_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "codenames/game.hpp"
#include "codenames/static_agents.hpp"

namespace codenames {

struct SpymasterConfig {
  double assumed_noise = 0.0;  // eta-hat
  int samples = 10;            // s, per guesser model and candidate
  // Keep pseudo-counts across turns; false clears the store before each search.
  bool persist_counts = true;
};

// Observed guess gamma*: board positions in reveal order.
using ObservedAction = std::vector<int>;

// Posterior over guesser models plus the Monte-Carlo pseudo-counts used as
// likelihoods. A missing count reads as 1 (Laplace prior).
struct SpymasterBeliefs {
  using CountKey = std::tuple<int, std::string, int>;  // (model, clue word, number)

  std::vector<PartnerModel> models;
  std::vector<double> prior;
  std::vector<double> posterior;
  std::map<CountKey, std::map<ObservedAction, long>> counts;

  long count(int model, const Clue& clue, const ObservedAction& observed) const;
  std::size_t leading() const;  // argmax posterior, ties by tie_rank
};

// Uniform prior when `prior` is empty. Throws on an empty model set or a
// prior that does not sum to 1.
SpymasterBeliefs init_beliefs(std::vector<PartnerModel> models, std::vector<double> prior = {});

// posterior(g) ∝ posterior(g) * h[(g, clue)][observed].
void observe_guess(SpymasterBeliefs& beliefs, const Clue& clue, const ObservedAction& observed);

// Shortest prefix ending at the first non-Red card, or all of `guess`.
ObservedAction get_observed_action(std::span<const int> guess, const WorldState& world);

// Summed distance from `clue_vector` to the leading all-Red prefix of `guess`.
double get_sum_distance(std::span<const double> clue_vector, std::span<const int> guess,
                        const WorldState& world, const EmbeddingTable& table,
                        const BoardView& view);

// Candidate clue words: union over models of the neighbour lists of the
// unrevealed Red words, minus board words, sorted lexicographically.
std::vector<std::string> spymaster_candidates(const SpymasterBeliefs& beliefs,
                                              const WorldState& world, const BoardView& view);

struct EvaluatedClue {
  Clue clue;
  double expected_utility;
  double sum_distance;
};

struct ClueSearchReport {
  std::vector<EvaluatedClue> evaluated;
  std::vector<Clue> pruned;  // first pruned (word, n) per word
  bool used_fallback = false;
};

// Expected-utility clue search with noiseless viability pruning. Increments
// pseudo-counts for every evaluated (model, word, number).
Clue get_clue(SpymasterBeliefs& beliefs, const WorldState& world, const BoardView& view,
              std::span<const std::string> candidates, const SpymasterConfig& config, Rng& rng,
              ClueSearchReport* report = nullptr);

}  // namespace codenames

#endif  // CODENAMES_BAYESIAN_SPYMASTER_HPP_
