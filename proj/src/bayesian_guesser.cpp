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

#include "codenames/bayesian_guesser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace codenames {
namespace {

std::uint64_t revealed_mask(const BoardView& view) {
  std::uint64_t mask = 0;
  for (int i = 0; i < view.size(); ++i) {
    if (view.is_revealed(i)) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

// Remaining category multiset of the unrevealed cards, in category order.
std::vector<CardCategory> remaining_categories(const BoardView& view) {
  std::vector<CardCategory> out;
  for (CardCategory c : kCategories) {
    int left = view.remaining(c);
    if (left < 0) throw Error("board view reveals more cards of a category than exist");
    out.insert(out.end(), left, c);
  }
  return out;
}

WorldState base_world(const BoardView& view) {
  WorldState w;
  w.categories.resize(view.size(), CardCategory::Red);
  for (int i = 0; i < view.size(); ++i) {
    if (view.revealed[i]) w.categories[i] = *view.revealed[i];
  }
  return w;
}

void normalize(std::vector<double>& p) {
  double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (total > 0.0) {
    for (double& x : p) x /= total;
  }
}

}  // namespace

double count_consistent_worlds(const BoardView& view) {
  // Multinomial coefficient via log-gamma; exact enough to compare with n_w.
  double log_count = std::lgamma(static_cast<double>(view.unrevealed().size()) + 1.0);
  for (CardCategory c : kCategories) log_count -= std::lgamma(view.remaining(c) + 1.0);
  return std::round(std::exp(log_count));
}

WorldSample sample_world_states(const BoardView& view, int n_w, Rng& rng) {
  if (n_w < 1) throw Error("sample_world_states: n_w must be >= 1");
  const auto cards = view.unrevealed();
  auto cats = remaining_categories(view);
  if (cats.size() != cards.size()) {
    throw Error("board view is inconsistent with its composition: no world matches");
  }
  WorldSample sample;
  const WorldState base = base_world(view);
  auto emit = [&](const std::vector<CardCategory>& assignment) {
    WorldState w = base;
    for (std::size_t i = 0; i < cards.size(); ++i) w.categories[cards[i]] = assignment[i];
    sample.worlds.push_back(std::move(w));
  };
  if (count_consistent_worlds(view) <= static_cast<double>(n_w)) {
    // cats is sorted by category, the first permutation in lexicographic order.
    do {
      emit(cats);
    } while (std::next_permutation(cats.begin(), cats.end()));
  } else {
    std::set<std::vector<CardCategory>> seen;
    const long max_attempts = 50L * n_w;
    for (long attempt = 0; attempt < max_attempts && static_cast<int>(seen.size()) < n_w;
         ++attempt) {
      for (std::size_t i = cats.size(); i > 1; --i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(cats[i - 1], cats[pick(rng)]);
      }
      if (seen.insert(cats).second) emit(cats);
    }
  }
  sample.weights.assign(sample.worlds.size(), 1.0);
  return sample;
}

Level0ClueLikelihood::Level0ClueLikelihood(
    std::vector<PartnerModel> models, std::vector<std::shared_ptr<const VoronoiEstimator>> voronoi)
    : models_(std::move(models)), voronoi_(std::move(voronoi)) {
  if (voronoi_.size() != models_.size()) {
    throw Error("Level0ClueLikelihood: one Voronoi estimator per model required");
  }
}

const ClueSearch& Level0ClueLikelihood::search(std::size_t model, const BoardView& view) {
  auto key = std::make_tuple(model, view.turn, revealed_mask(view));
  auto it = searches_.find(key);
  if (it == searches_.end()) {
    it = searches_.emplace(key, std::make_unique<ClueSearch>(models_[model], view)).first;
  }
  return *it->second;
}

double Level0ClueLikelihood::operator()(std::size_t model, const BoardView& view,
                                        const Clue& observed, const WorldState& world) {
  if (view.remaining(CardCategory::Red) < 1) return 0.0;
  Clue intended = search(model, view).best(world);
  if (intended.number != observed.number) return 0.0;
  const auto& table = *models_[model].embedding;
  auto observed_id = table.find(observed.word);
  if (!observed_id) return 0.0;
  return voronoi_[model]->probability(table.id(intended.word), *observed_id);
}

std::vector<double> history_likelihood(std::span<const WorldState> worlds,
                                       std::span<const HistoryEntry> history,
                                       std::size_t n_models, ClueLikelihood& likelihood) {
  std::vector<double> weights(worlds.size(), 1.0);
  for (const auto& entry : history) {
    if (!entry.clue) continue;
    for (std::size_t w = 0; w < worlds.size(); ++w) {
      if (weights[w] == 0.0) continue;
      double turn = 0.0;
      for (std::size_t m = 0; m < n_models; ++m) {
        turn += likelihood(m, entry.view, *entry.clue, worlds[w]);
      }
      weights[w] *= turn;
    }
  }
  return weights;
}

GuesserState init_guesser(std::vector<PartnerModel> models, GuesserConfig config,
                          std::vector<double> prior) {
  if (models.empty()) throw Error("guesser needs at least one spymaster model");
  if (config.skip_threshold < 0.0 || config.skip_threshold > 1.0 ||
      config.belief_threshold < 0.0 || config.belief_threshold > 1.0) {
    throw Error("guesser thresholds must lie in [0, 1]");
  }
  if (config.noise < 0.0) throw Error("guesser noise must be non-negative");
  if (config.world_samples < 1 || config.voronoi_samples < 1) {
    throw Error("guesser sample counts must be >= 1");
  }
  if (prior.empty()) prior.assign(models.size(), 1.0 / static_cast<double>(models.size()));
  if (prior.size() != models.size()) throw Error("prior size does not match model count");
  double sum = 0.0;
  for (double p : prior) {
    if (!(p > 0.0)) throw Error("prior probabilities must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("prior does not sum to 1");
  GuesserState state;
  state.models = std::move(models);
  state.posterior = prior;
  state.prior = std::move(prior);
  state.config = config;
  return state;
}

ModelUpdate update_model_probabilities(GuesserState& state, WorldSample& sample,
                                       const BoardView& view, const Clue& clue,
                                       ClueLikelihood& likelihood) {
  const std::size_t n_models = state.models.size();
  ModelUpdate update;
  update.model_likelihood.assign(n_models, 0.0);
  update.world_likelihood.assign(sample.worlds.size(), 0.0);

  // Model evidence averages over worlds under their current history weights.
  std::vector<double> world_weight = sample.weights;
  normalize(world_weight);
  if (std::all_of(world_weight.begin(), world_weight.end(), [](double x) { return x == 0.0; })) {
    // The sample missed every history-consistent world; start it afresh.
    world_weight.assign(world_weight.size(), 1.0 / static_cast<double>(world_weight.size()));
    sample.weights.assign(sample.weights.size(), 1.0);
  }
  double total = 0.0;
  for (std::size_t w = 0; w < sample.worlds.size(); ++w) {
    for (std::size_t m = 0; m < n_models; ++m) {
      double p = likelihood(m, view, clue, sample.worlds[w]);
      update.world_likelihood[w] += p;
      update.model_likelihood[m] += world_weight[w] * p;
      total += world_weight[w] * p;
    }
  }
  if (total == 0.0) {
    update.skipped = true;
    state.history.push_back({std::nullopt, view});
    return update;
  }
  state.history.push_back({clue, view});
  for (std::size_t m = 0; m < n_models; ++m) state.posterior[m] *= update.model_likelihood[m];
  normalize(state.posterior);
  for (std::size_t w = 0; w < sample.worlds.size(); ++w) {
    sample.weights[w] *= update.world_likelihood[w];
  }
  return update;
}

CardProbabilities card_probabilities(const WorldSample& sample, std::span<const int> ordering,
                                     int k, double skip_threshold) {
  CardProbabilities out;
  if (sample.worlds.empty()) throw Error("card_probabilities: empty world sample");
  const std::size_t board = sample.worlds.front().categories.size();
  out.probs.assign(board, CategoryProbs{0.0, 0.0, 0.0, 0.0});
  // Sum raw weights and divide once, so a card with one category in every
  // weighted world gets exactly 1 for it.
  std::vector<double> weight = sample.weights;
  double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  if (total == 0.0) {
    weight.assign(weight.size(), 1.0);
    total = static_cast<double>(weight.size());
  }
  for (int card : ordering) {
    auto& p = out.probs[card];
    for (std::size_t w = 0; w < sample.worlds.size(); ++w) {
      p[static_cast<int>(sample.worlds[w].categories[card])] += weight[w];
    }
    for (double& x : p) x /= total;
    if (p[0] > skip_threshold) out.survivors.push_back(card);
  }
  const std::size_t boost = std::min<std::size_t>(std::max(k, 0), out.survivors.size());
  for (std::size_t i = 0; i < boost; ++i) {
    int card = out.survivors[i];
    out.probs[card] = {1.0, 0.0, 0.0, 0.0};
    out.boosted.push_back(card);
  }
  return out;
}

double expected_card_value(const CategoryProbs& p, int red_total) {
  return p[0] * 1.0 + p[1] * -1.0 + p[2] * 0.0 + p[3] * -static_cast<double>(red_total);
}

GuessPlan select_guess(const WorldSample& sample, std::span<const int> ordering, int number,
                       const GuesserConfig& config, int red_total) {
  if (number < 1) throw Error("select_guess: clue number must be >= 1");
  if (ordering.empty()) throw Error("select_guess: no unrevealed cards");
  GuessPlan plan;
  std::vector<int> order(ordering.begin(), ordering.end());
  int k = number;
  auto probs = card_probabilities(sample, order, k, config.skip_threshold);

  // First pick is mandatory: best qualifying card, else best card overall.
  int pick = -1;
  double best = -std::numeric_limits<double>::infinity();
  for (int card : order) {
    if (probs.probs[card][0] >= config.belief_threshold) {
      double v = expected_card_value(probs.probs[card], red_total);
      if (v > best) {
        best = v;
        pick = card;
      }
    }
  }
  if (pick < 0) {
    for (int card : order) {
      double v = expected_card_value(probs.probs[card], red_total);
      if (v > best) {
        best = v;
        pick = card;
      }
    }
  }
  plan.cards.push_back(pick);
  plan.pick_probabilities.push_back(probs.probs[pick]);
  --k;

  WorldSample conditioned = sample;
  while (k >= 0) {
    order.erase(std::find(order.begin(), order.end(), pick));
    if (order.empty()) break;
    WorldSample next;
    for (std::size_t w = 0; w < conditioned.worlds.size(); ++w) {
      if (conditioned.worlds[w].categories[pick] == CardCategory::Red) {
        next.worlds.push_back(std::move(conditioned.worlds[w]));
        next.weights.push_back(conditioned.weights[w]);
      }
    }
    conditioned = std::move(next);
    if (conditioned.worlds.empty()) break;
    probs = card_probabilities(conditioned, order, k, config.skip_threshold);
    pick = -1;
    best = 0.0;
    for (int card : order) {
      if (probs.probs[card][0] >= config.belief_threshold) {
        double v = expected_card_value(probs.probs[card], red_total);
        if (v > best) {
          best = v;
          pick = card;
        }
      }
    }
    if (pick < 0) break;
    plan.cards.push_back(pick);
    plan.pick_probabilities.push_back(probs.probs[pick]);
    --k;
  }
  return plan;
}

bool update_on_reveal(GuesserState& state, int pick_index, CardCategory observed) {
  if (pick_index < 0 || pick_index >= static_cast<int>(state.pick_probabilities.size())) {
    throw Error("update_on_reveal: pick index out of range");
  }
  if (state.pick_probabilities[pick_index][static_cast<int>(observed)] != 0.0) return false;
  state.posterior = state.prior;
  state.history.clear();
  return true;
}

std::size_t leading_model_index(const GuesserState& state) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < state.posterior.size(); ++i) {
    if (state.posterior[i] > state.posterior[best] ||
        (state.posterior[i] == state.posterior[best] &&
         state.models[i].tie_rank < state.models[best].tie_rank)) {
      best = i;
    }
  }
  return best;
}

const PartnerModel& leading_model(const GuesserState& state) {
  return state.models[leading_model_index(state)];
}

std::vector<int> boost_ordering(const PartnerModel& model, const BoardView& view,
                                const Clue& clue) {
  const auto& table = *model.embedding;
  if (auto id = table.find(clue.word)) return rank_cards(table, view, table.vector(*id));
  auto cards = view.unrevealed();
  std::sort(cards.begin(), cards.end(),
            [&](int a, int b) { return view.words[a] < view.words[b]; });
  return cards;
}

BayesianGuesser::BayesianGuesser(GuesserState state, std::unique_ptr<ClueLikelihood> likelihood,
                                 std::uint64_t seed)
    : state_(std::move(state)), likelihood_(std::move(likelihood)), rng_(seed) {}

GuessSequence BayesianGuesser::guess(const BoardView& view, const Clue& clue) {
  WorldSample sample = sample_world_states(view, state_.config.world_samples, rng_);
  sample.weights = history_likelihood(sample.worlds, state_.history, state_.models.size(),
                                      *likelihood_);
  update_model_probabilities(state_, sample, view, clue, *likelihood_);
  last_ordering_ = boost_ordering(leading_model(state_), view, clue);
  last_probs_ = card_probabilities(sample, last_ordering_, clue.number,
                                   state_.config.skip_threshold);
  GuessPlan plan = select_guess(sample, last_ordering_, clue.number, state_.config,
                                view.composition.red);
  state_.pick_probabilities = plan.pick_probabilities;
  return plan.cards;
}

bool BayesianGuesser::observe_reveal(int pick_index, CardCategory observed) {
  return update_on_reveal(state_, pick_index, observed);
}

}  // namespace codenames
