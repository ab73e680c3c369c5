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

#include "codenames/static_agents.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace codenames {
namespace {

constexpr int kDefaultNeighbors = 300;

std::vector<Neighbor> neighbors_of(const PartnerModel& model, WordId word) {
  if (model.index) {
    if (const auto* list = model.index->find(word)) return *list;
  }
  int k = model.index ? model.index->k() : kDefaultNeighbors;
  return nearest_words(*model.embedding, model.embedding->vector(word), k, {word});
}

std::unordered_set<WordId> board_word_ids(const EmbeddingTable& table, const BoardView& view) {
  std::unordered_set<WordId> ids;
  for (const auto& w : view.words) {
    if (auto id = table.find(w)) ids.insert(*id);
  }
  return ids;
}

}  // namespace

std::vector<int> rank_cards(const EmbeddingTable& table, const BoardView& view,
                            std::span<const double> target) {
  struct Entry {
    int card;
    double d;
  };
  std::vector<Entry> entries;
  for (int card : view.unrevealed()) {
    auto id = table.find(view.words[card]);
    double d = id ? distance(table.vector(*id), target) : std::numeric_limits<double>::infinity();
    entries.push_back({card, d});
  }
  std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    if (a.d != b.d) return a.d < b.d;
    return view.words[a.card] < view.words[b.card];
  });
  std::vector<int> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.card);
  return out;
}

GuessSequence level0_guess(const PartnerModel& model, const BoardView& view,
                           std::span<const double> clue_vector, int number) {
  auto ranking = rank_cards(*model.embedding, view, clue_vector);
  ranking.resize(std::min<std::size_t>(ranking.size(), static_cast<std::size_t>(number)));
  return ranking;
}

Level0Guess level0_guess(const PartnerModel& model, const BoardView& view, const Clue& clue) {
  auto id = model.embedding->find(clue.word);
  if (id) return {level0_guess(model, view, model.embedding->vector(*id), clue.number), false};
  auto cards = view.unrevealed();
  std::sort(cards.begin(), cards.end(),
            [&](int a, int b) { return view.words[a] < view.words[b]; });
  cards.resize(std::min<std::size_t>(cards.size(), static_cast<std::size_t>(clue.number)));
  return {cards, true};
}

std::vector<WordId> candidate_clues(const PartnerModel& model, const BoardView& view,
                                    std::span<const int> cards) {
  const auto& table = *model.embedding;
  auto board = board_word_ids(table, view);
  std::unordered_set<WordId> seen;
  std::vector<WordId> out;
  for (int card : cards) {
    auto id = table.find(view.words[card]);
    if (!id) continue;
    for (const auto& n : neighbors_of(model, *id)) {
      if (board.count(n.word) == 0 && seen.insert(n.word).second) out.push_back(n.word);
    }
  }
  std::sort(out.begin(), out.end(),
            [&](WordId a, WordId b) { return table.lex_rank(a) < table.lex_rank(b); });
  return out;
}

ClueSearch::ClueSearch(const PartnerModel& model, const BoardView& view)
    : model_(model), view_(view) {
  if (view.size() > 64) throw Error("ClueSearch supports boards of at most 64 cards");
  const auto& table = *model.embedding;
  auto board = board_word_ids(table, view);
  std::unordered_map<WordId, std::uint64_t> masks;
  for (int card : view.unrevealed()) {
    auto id = table.find(view.words[card]);
    if (!id) continue;
    for (const auto& n : neighbors_of(model, *id)) {
      if (board.count(n.word) == 0) masks[n.word] |= std::uint64_t{1} << card;
    }
  }
  candidates_.reserve(masks.size());
  for (const auto& [word, mask] : masks) {
    Candidate c{word, mask, {}, {0.0}};
    auto vec = table.vector(word);
    for (int card : rank_cards(table, view, vec)) {
      c.ranking.push_back(static_cast<std::int8_t>(card));
      auto id = table.find(view.words[card]);
      double d = id ? distance(table.vector(*id), vec) : std::numeric_limits<double>::infinity();
      c.prefix.push_back(c.prefix.back() + d);
    }
    candidates_.push_back(std::move(c));
  }
  std::sort(candidates_.begin(), candidates_.end(), [&](const Candidate& a, const Candidate& b) {
    return table.lex_rank(a.word) < table.lex_rank(b.word);
  });
}

Clue ClueSearch::best(const WorldState& world) const {
  std::uint64_t red_mask = 0;
  for (int card : view_.unrevealed()) {
    if (world.categories[card] == CardCategory::Red) red_mask |= std::uint64_t{1} << card;
  }
  const Candidate* best = nullptr;
  int best_count = 0;
  double best_q = 0.0;
  for (const auto& c : candidates_) {
    if ((c.mask & red_mask) == 0) continue;
    int count = 0;
    while (count < static_cast<int>(c.ranking.size()) &&
           world.categories[c.ranking[count]] == CardCategory::Red) {
      ++count;
    }
    if (count == 0) continue;
    double q = c.prefix[count];
    // Candidates are visited in lexicographic order, so strict comparisons
    // leave the lexicographically first word on full ties.
    if (best == nullptr || count > best_count || (count == best_count && q < best_q)) {
      best = &c;
      best_count = count;
      best_q = q;
    }
  }
  if (best != nullptr) return {model_.embedding->word(best->word), best_count};
  return fallback(world);
}

Clue ClueSearch::fallback(const WorldState& world) const {
  std::uint64_t red_mask = 0;
  for (int card : view_.unrevealed()) {
    if (world.categories[card] == CardCategory::Red) red_mask |= std::uint64_t{1} << card;
  }
  const int red_total = view_.composition.red;
  // No candidate reaches even one Red card: the least damaging first pick.
  const Candidate* best = nullptr;
  int best_value = std::numeric_limits<int>::min();
  for (const auto& c : candidates_) {
    if ((c.mask & red_mask) == 0 || c.ranking.empty()) continue;
    int value = card_value(world.categories[c.ranking[0]], red_total);
    if (value > best_value) {
      best = &c;
      best_value = value;
    }
  }
  if (best != nullptr) return {model_.embedding->word(best->word), 1};

  // Empty candidate set: nearest non-board word to any unrevealed Red card.
  const auto& table = *model_.embedding;
  auto board = board_word_ids(table, view_);
  std::optional<Neighbor> nearest;
  for (int card : view_.unrevealed()) {
    if (world.categories[card] != CardCategory::Red) continue;
    auto id = table.find(view_.words[card]);
    if (!id) continue;
    auto found = nearest_words(table, table.vector(*id), 1, board);
    if (found.empty()) continue;
    const auto& n = found.front();
    if (!nearest || n.distance < nearest->distance ||
        (n.distance == nearest->distance && table.lex_rank(n.word) < table.lex_rank(nearest->word))) {
      nearest = n;
    }
  }
  if (!nearest) throw Error("no legal clue word available in embedding '" + table.name() + "'");
  return {table.word(nearest->word), 1};
}

Clue level0_clue(const PartnerModel& model, const WorldState& world, const BoardView& view) {
  if (view.remaining(CardCategory::Red) < 1) throw Error("level0_clue: no Red cards remain");
  return ClueSearch(model, view).best(world);
}

}  // namespace codenames
