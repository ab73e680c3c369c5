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

#ifndef CODENAMES_BAYESIAN_GUESSER_HPP_
#define CODENAMES_BAYESIAN_GUESSER_HPP_

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "codenames/game.hpp"
#include "codenames/static_agents.hpp"
#include "codenames/voronoi.hpp"

namespace codenames {

struct GuesserConfig {
  double skip_threshold = 1.0;    // p(Red) at or below this is never boosted
  double belief_threshold = 0.0;  // p(Red) a card needs to be guessed voluntarily
  double noise = 0.0;             // sigma of the assumed clue channel
  int world_samples = 1000;
  int voronoi_samples = 1000;
};

// One received clue and the board it was given on. `clue` is empty when the
// clue had zero likelihood under every (model, world) and was skipped.
struct HistoryEntry {
  std::optional<Clue> clue;
  BoardView view;
};

struct WorldSample {
  std::vector<WorldState> worlds;
  std::vector<double> weights;  // p(w | clue history), unnormalized
};

// Number of assignments of the unrevealed cards matching the remaining
// category counts.
double count_consistent_worlds(const BoardView& view);

// Up to n_w distinct consistent worlds, uniformly drawn. Enumerates exactly
// when the consistent set has at most n_w members. All weights start at 1.
WorldSample sample_world_states(const BoardView& view, int n_w, Rng& rng);

// P(observed clue | spymaster model, world) for a clue given on `view`.
class ClueLikelihood {
 public:
  virtual ~ClueLikelihood() = default;
  virtual double operator()(std::size_t model, const BoardView& view, const Clue& observed,
                            const WorldState& world) = 0;
};

// Replays each model as a level-0 spymaster on the historical view and
// scores the observed clue with the Voronoi probability of its word around
// the replayed clue's word (zero when the numbers differ).
class Level0ClueLikelihood : public ClueLikelihood {
 public:
  Level0ClueLikelihood(std::vector<PartnerModel> models,
                       std::vector<std::shared_ptr<const VoronoiEstimator>> voronoi);
  double operator()(std::size_t model, const BoardView& view, const Clue& observed,
                    const WorldState& world) override;

 private:
  const ClueSearch& search(std::size_t model, const BoardView& view);

  std::vector<PartnerModel> models_;
  std::vector<std::shared_ptr<const VoronoiEstimator>> voronoi_;
  // Keyed by (model, turn, revealed-card mask).
  std::map<std::tuple<std::size_t, int, std::uint64_t>, std::unique_ptr<ClueSearch>> searches_;
};

// For each world: product over non-skipped history clues of
// sum_m P(clue | m, world).
std::vector<double> history_likelihood(std::span<const WorldState> worlds,
                                       std::span<const HistoryEntry> history,
                                       std::size_t n_models, ClueLikelihood& likelihood);

using CategoryProbs = std::array<double, 4>;  // indexed by CardCategory

struct GuesserState {
  std::vector<PartnerModel> models;
  std::vector<double> prior;
  std::vector<double> posterior;
  std::vector<HistoryEntry> history;
  GuesserConfig config;
  std::vector<CategoryProbs> pick_probabilities;  // for the current guess
};

GuesserState init_guesser(std::vector<PartnerModel> models, GuesserConfig config,
                          std::vector<double> prior = {});

struct ModelUpdate {
  bool skipped = false;
  std::vector<double> model_likelihood;  // p_t(m | l_t)
  std::vector<double> world_likelihood;  // p_t(w | l_t)
};

// Scores the current clue over the sample. A zero total appends a skipped
// history entry and changes nothing else; otherwise the posterior is
// multiplied by the model marginals and renormalized, the world weights by
// the world marginals, and the clue is appended to the history.
ModelUpdate update_model_probabilities(GuesserState& state, WorldSample& sample,
                                       const BoardView& view, const Clue& clue,
                                       ClueLikelihood& likelihood);

struct CardProbabilities {
  std::vector<CategoryProbs> probs;  // by board position; zero for cards not in the ordering
  std::vector<int> survivors;        // ordering minus cards with p(Red) <= skip
  std::vector<int> boosted;          // first k survivors, set to certainly Red
};

// Category marginals under the normalized world weights, then the boost.
// All-zero weights are treated as uniform.
CardProbabilities card_probabilities(const WorldSample& sample, std::span<const int> ordering,
                                     int k, double skip_threshold);

double expected_card_value(const CategoryProbs& p, int red_total);

struct GuessPlan {
  GuessSequence cards;
  std::vector<CategoryProbs> pick_probabilities;
};

// Thresholded expected-utility guess of up to number+1 cards, conditioning
// the sample on every earlier pick being Red.
GuessPlan select_guess(const WorldSample& sample, std::span<const int> ordering, int number,
                       const GuesserConfig& config, int red_total);

// Resets the posterior to the prior and clears the history when the revealed
// category had probability zero at decision time. Returns whether it reset.
bool update_on_reveal(GuesserState& state, int pick_index, CardCategory observed);

std::size_t leading_model_index(const GuesserState& state);
const PartnerModel& leading_model(const GuesserState& state);

// Unrevealed cards ascending by distance from the clue word under `model`;
// lexicographic when the model does not know the clue word.
std::vector<int> boost_ordering(const PartnerModel& model, const BoardView& view, const Clue& clue);

// Everything above wired into one agent.
class BayesianGuesser {
 public:
  BayesianGuesser(GuesserState state, std::unique_ptr<ClueLikelihood> likelihood,
                  std::uint64_t seed);

  GuessSequence guess(const BoardView& view, const Clue& clue);
  bool observe_reveal(int pick_index, CardCategory observed);

  const GuesserState& state() const { return state_; }
  const CardProbabilities& last_probabilities() const { return last_probs_; }
  const std::vector<int>& last_ordering() const { return last_ordering_; }

 private:
  GuesserState state_;
  std::unique_ptr<ClueLikelihood> likelihood_;
  Rng rng_;
  CardProbabilities last_probs_;
  std::vector<int> last_ordering_;
};

}  // namespace codenames

#endif  // CODENAMES_BAYESIAN_GUESSER_HPP_
