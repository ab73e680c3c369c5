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

#ifndef CODENAMES_GAME_HPP_
#define CODENAMES_GAME_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codenames/common.hpp"

namespace codenames {

enum class CardCategory : std::uint8_t { Red = 0, Blue = 1, Bystander = 2, Assassin = 3 };
inline constexpr std::array<CardCategory, 4> kCategories = {
    CardCategory::Red, CardCategory::Blue, CardCategory::Bystander, CardCategory::Assassin};

std::string_view to_string(CardCategory c);
CardCategory parse_category(std::string_view s);

struct Composition {
  int red = 9;
  int blue = 8;
  int bystander = 7;
  int assassin = 1;

  int total() const { return red + blue + bystander + assassin; }
  int count(CardCategory c) const;
  bool operator==(const Composition&) const = default;
};

struct GameRules {
  Composition composition;
  int board_size = 25;
  int turn_limit = 25;
};

// Hidden assignment, indexed by board position.
struct WorldState {
  std::vector<CardCategory> categories;
  bool operator==(const WorldState&) const = default;
};

struct Clue {
  std::string word;
  int number = 1;
  bool operator==(const Clue&) const = default;
};

struct Reveal {
  int card = -1;
  CardCategory category = CardCategory::Red;
  int turn = 0;
  bool operator==(const Reveal&) const = default;
};

// Intended guess: board positions in picking order.
using GuessSequence = std::vector<int>;

// Public information: the word grid, what has been revealed, and the log.
struct BoardView {
  std::vector<std::string> words;
  Composition composition;
  int turn_limit = 25;
  std::vector<std::optional<CardCategory>> revealed;
  int turn = 0;  // number of clues given so far
  std::vector<Clue> clue_log;
  std::vector<Reveal> reveal_log;

  int size() const { return static_cast<int>(words.size()); }
  bool is_revealed(int card) const { return revealed[card].has_value(); }
  std::vector<int> unrevealed() const;
  int revealed_count(CardCategory c) const;
  int remaining(CardCategory c) const { return composition.count(c) - revealed_count(c); }
  std::optional<int> card_index(std::string_view word) const;
};

BoardView make_view(std::vector<std::string> words, const Composition& composition,
                    int turn_limit = 25);

// Draws `rules.board_size` distinct words from `pool` and a uniformly random
// assignment with the configured counts.
std::pair<WorldState, BoardView> new_game(std::span<const std::string> pool,
                                          const GameRules& rules, Rng& rng);

// Throw IllegalAction naming the broken rule.
void validate_clue(const BoardView& view, const Clue& clue);
void validate_guess(const BoardView& view, const Clue& clue, const GuessSequence& guess);

struct TurnResult {
  std::vector<Reveal> observed;
};

// Reveals the intended guess in order, stopping right after the first
// non-Red card. Advances the turn counter and appends to the logs.
TurnResult resolve_turn(const WorldState& world, BoardView& view, const Clue& clue,
                        const GuessSequence& intended);

// Heuristic value of one turn: sum of card values minus one, with
// Red=1, Blue=-1, Bystander=0, Assassin=-|R|.
int card_value(CardCategory c, int red_total);
int turn_utility(std::span<const CardCategory> observed, int red_total);
int turn_utility(std::span<const Reveal> observed, int red_total);

bool is_terminal(const BoardView& view);

struct GameOutcome {
  bool win = false;
  int score = 0;
  int turns = 0;
  int blue_guessed = 0;
  bool assassin = false;
};

// score = |R| - blue - (|R| if assassin) - turns; a win needs score > 0 and
// every Red card revealed. Throws on a non-terminal view.
GameOutcome game_outcome(const BoardView& view);

}  // namespace codenames

#endif  // CODENAMES_GAME_HPP_
