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

#include "codenames/game.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace codenames {

std::string_view to_string(CardCategory c) {
  switch (c) {
    case CardCategory::Red: return "red";
    case CardCategory::Blue: return "blue";
    case CardCategory::Bystander: return "bystander";
    case CardCategory::Assassin: return "assassin";
  }
  return "?";
}

CardCategory parse_category(std::string_view s) {
  for (CardCategory c : kCategories) {
    if (to_string(c) == s) return c;
  }
  throw Error("unknown card category '" + std::string(s) + "'");
}

int Composition::count(CardCategory c) const {
  switch (c) {
    case CardCategory::Red: return red;
    case CardCategory::Blue: return blue;
    case CardCategory::Bystander: return bystander;
    case CardCategory::Assassin: return assassin;
  }
  return 0;
}

std::vector<int> BoardView::unrevealed() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (!revealed[i]) out.push_back(i);
  }
  return out;
}

int BoardView::revealed_count(CardCategory c) const {
  return static_cast<int>(std::count(revealed.begin(), revealed.end(), c));
}

std::optional<int> BoardView::card_index(std::string_view word) const {
  auto it = std::find(words.begin(), words.end(), word);
  if (it == words.end()) return std::nullopt;
  return static_cast<int>(it - words.begin());
}

BoardView make_view(std::vector<std::string> words, const Composition& composition,
                    int turn_limit) {
  if (static_cast<int>(words.size()) != composition.total()) {
    throw Error("board has " + std::to_string(words.size()) + " words but composition sums to " +
                std::to_string(composition.total()));
  }
  BoardView view;
  view.words = std::move(words);
  view.composition = composition;
  view.turn_limit = turn_limit;
  view.revealed.assign(view.words.size(), std::nullopt);
  return view;
}

std::pair<WorldState, BoardView> new_game(std::span<const std::string> pool,
                                          const GameRules& rules, Rng& rng) {
  const auto& comp = rules.composition;
  if (comp.red < 1 || comp.blue < 0 || comp.bystander < 0 || comp.assassin < 0) {
    throw Error("invalid board composition");
  }
  if (comp.total() != rules.board_size) {
    throw Error("composition counts sum to " + std::to_string(comp.total()) + ", expected " +
                std::to_string(rules.board_size));
  }
  std::vector<std::string> distinct;
  {
    std::unordered_set<std::string> seen;
    for (const auto& w : pool) {
      if (seen.insert(w).second) distinct.push_back(w);
    }
  }
  if (static_cast<int>(distinct.size()) < rules.board_size) {
    throw Error("word pool has " + std::to_string(distinct.size()) + " distinct words, need " +
                std::to_string(rules.board_size));
  }
  // Partial Fisher-Yates over indices keeps the draw independent of how the
  // standard library implements std::shuffle.
  std::vector<std::string> words;
  for (int i = 0; i < rules.board_size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, distinct.size() - 1);
    std::swap(distinct[i], distinct[pick(rng)]);
    words.push_back(distinct[i]);
  }
  std::vector<CardCategory> cats;
  for (CardCategory c : kCategories) cats.insert(cats.end(), comp.count(c), c);
  for (std::size_t i = cats.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(cats[i - 1], cats[pick(rng)]);
  }
  BoardView view = make_view(std::move(words), comp, rules.turn_limit);
  return {WorldState{std::move(cats)}, std::move(view)};
}

void validate_clue(const BoardView& view, const Clue& clue) {
  if (clue.word.empty()) throw IllegalAction("clue must be a single word", "empty clue word");
  if (view.card_index(clue.word)) {
    throw IllegalAction("clue word may not be a word on the board",
                        "clue '" + clue.word + "' is a board word");
  }
  int remaining = view.remaining(CardCategory::Red);
  if (clue.number < 1 || clue.number > remaining) {
    throw IllegalAction("clue number must be between 1 and the remaining team cards",
                        "clue number " + std::to_string(clue.number) + " outside [1, " +
                            std::to_string(remaining) + "]");
  }
}

void validate_guess(const BoardView& view, const Clue& clue, const GuessSequence& guess) {
  if (guess.empty()) throw IllegalAction("the guesser must guess at least one card", "empty guess");
  if (static_cast<int>(guess.size()) > clue.number + 1) {
    throw IllegalAction("at most one card more than the clue number may be guessed",
                        "guess of " + std::to_string(guess.size()) + " cards for clue number " +
                            std::to_string(clue.number));
  }
  std::unordered_set<int> seen;
  for (int card : guess) {
    if (card < 0 || card >= view.size()) {
      throw IllegalAction("guesses must name board cards", "card index out of range");
    }
    if (view.is_revealed(card)) {
      throw IllegalAction("revealed cards cannot be guessed again",
                          "card '" + view.words[card] + "' is already revealed");
    }
    if (!seen.insert(card).second) {
      throw IllegalAction("a card may be guessed only once",
                          "duplicate guess '" + view.words[card] + "'");
    }
  }
}

TurnResult resolve_turn(const WorldState& world, BoardView& view, const Clue& clue,
                        const GuessSequence& intended) {
  if (is_terminal(view)) throw IllegalAction("the game is over", "turn on a finished game");
  validate_clue(view, clue);
  validate_guess(view, clue, intended);
  TurnResult result;
  view.clue_log.push_back(clue);
  for (int card : intended) {
    Reveal r{card, world.categories[card], view.turn};
    view.revealed[card] = r.category;
    view.reveal_log.push_back(r);
    result.observed.push_back(r);
    if (r.category != CardCategory::Red) break;
    if (view.remaining(CardCategory::Red) == 0) break;
  }
  ++view.turn;
  return result;
}

int card_value(CardCategory c, int red_total) {
  switch (c) {
    case CardCategory::Red: return 1;
    case CardCategory::Blue: return -1;
    case CardCategory::Bystander: return 0;
    case CardCategory::Assassin: return -red_total;
  }
  return 0;
}

int turn_utility(std::span<const CardCategory> observed, int red_total) {
  int sum = -1;
  for (CardCategory c : observed) sum += card_value(c, red_total);
  return sum;
}

int turn_utility(std::span<const Reveal> observed, int red_total) {
  int sum = -1;
  for (const auto& r : observed) sum += card_value(r.category, red_total);
  return sum;
}

bool is_terminal(const BoardView& view) {
  return view.remaining(CardCategory::Red) == 0 || view.revealed_count(CardCategory::Assassin) > 0 ||
         view.turn >= view.turn_limit;
}

GameOutcome game_outcome(const BoardView& view) {
  if (!is_terminal(view)) throw Error("game_outcome called on a game still in progress");
  GameOutcome out;
  const int red_total = view.composition.red;
  out.turns = view.turn;
  out.blue_guessed = view.revealed_count(CardCategory::Blue);
  out.assassin = view.revealed_count(CardCategory::Assassin) > 0;
  out.score = red_total - out.blue_guessed - (out.assassin ? red_total : 0) - out.turns;
  out.win = out.score > 0 && view.remaining(CardCategory::Red) == 0;
  return out;
}

}  // namespace codenames
