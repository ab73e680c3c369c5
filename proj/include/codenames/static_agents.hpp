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

#ifndef CODENAMES_STATIC_AGENTS_HPP_
#define CODENAMES_STATIC_AGENTS_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "codenames/embedding.hpp"
#include "codenames/game.hpp"

namespace codenames {

// A hypothesised teammate: semantics (embedding), pragmatics (level) and the
// noise it is assumed to communicate through. `tie_rank` orders models when
// posteriors tie.
struct PartnerModel {
  std::string id;
  std::shared_ptr<const EmbeddingTable> embedding;
  std::shared_ptr<const NeighborIndex> index;
  int level = 0;
  double assumed_noise = 0.0;
  int tie_rank = 0;
};

// Unrevealed board positions ascending by distance from `target` in `table`,
// ties broken by board word. Cards whose word the table lacks go last.
std::vector<int> rank_cards(const EmbeddingTable& table, const BoardView& view,
                            std::span<const double> target);

struct Level0Guess {
  GuessSequence cards;
  bool vocabulary_mismatch = false;
};

// The clue.number unrevealed cards nearest the clue word. An out-of-vocabulary
// clue yields the lexicographically first unrevealed words with the mismatch
// flag set.
Level0Guess level0_guess(const PartnerModel& model, const BoardView& view, const Clue& clue);
GuessSequence level0_guess(const PartnerModel& model, const BoardView& view,
                           std::span<const double> clue_vector, int number);

// Candidate clue words for a board: the union of the neighbour lists of
// `cards`, minus every board word.
std::vector<WordId> candidate_clues(const PartnerModel& model, const BoardView& view,
                                    std::span<const int> cards);

// Level-0 spymaster search over one board view. Construction ranks the board
// for every candidate once; best() then answers for any world consistent with
// the view, which is what the Bayesian guesser needs when it replays a
// spymaster across many sampled worlds.
class ClueSearch {
 public:
  ClueSearch(const PartnerModel& model, const BoardView& view);

  // Most leading Red cards; ties by smaller distance sum, then word.
  Clue best(const WorldState& world) const;
  std::size_t candidate_count() const { return candidates_.size(); }

 private:
  struct Candidate {
    WordId word;
    std::uint64_t mask;  // unrevealed cards whose neighbour list holds the word
    std::vector<std::int8_t> ranking;
    std::vector<double> prefix;  // prefix[j] = summed distance of first j ranked
  };
  Clue fallback(const WorldState& world) const;

  PartnerModel model_;
  BoardView view_;
  std::vector<Candidate> candidates_;  // lexicographic by word
};

Clue level0_clue(const PartnerModel& model, const WorldState& world, const BoardView& view);

}  // namespace codenames

#endif  // CODENAMES_STATIC_AGENTS_HPP_
