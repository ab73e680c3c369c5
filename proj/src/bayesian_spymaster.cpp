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

#include "codenames/bayesian_spymaster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace codenames {

long SpymasterBeliefs::count(int model, const Clue& clue, const ObservedAction& observed) const {
  auto it = counts.find({model, clue.word, clue.number});
  if (it == counts.end()) return 1;
  auto jt = it->second.find(observed);
  return jt == it->second.end() ? 1 : jt->second;
}

std::size_t SpymasterBeliefs::leading() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < posterior.size(); ++i) {
    if (posterior[i] > posterior[best] ||
        (posterior[i] == posterior[best] && models[i].tie_rank < models[best].tie_rank)) {
      best = i;
    }
  }
  return best;
}

SpymasterBeliefs init_beliefs(std::vector<PartnerModel> models, std::vector<double> prior) {
  if (models.empty()) throw Error("spymaster needs at least one guesser model");
  std::unordered_set<std::string> ids;
  for (const auto& m : models) {
    if (!ids.insert(m.id).second) throw Error("duplicate model id '" + m.id + "'");
  }
  if (prior.empty()) prior.assign(models.size(), 1.0 / static_cast<double>(models.size()));
  if (prior.size() != models.size()) throw Error("prior size does not match model count");
  double sum = 0.0;
  for (double p : prior) {
    if (!(p > 0.0)) throw Error("prior probabilities must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("prior does not sum to 1");
  SpymasterBeliefs b;
  b.models = std::move(models);
  b.posterior = prior;
  b.prior = std::move(prior);
  return b;
}

void observe_guess(SpymasterBeliefs& beliefs, const Clue& clue, const ObservedAction& observed) {
  double total = 0.0;
  for (std::size_t g = 0; g < beliefs.models.size(); ++g) {
    beliefs.posterior[g] *= static_cast<double>(beliefs.count(static_cast<int>(g), clue, observed));
    total += beliefs.posterior[g];
  }
  for (double& p : beliefs.posterior) p /= total;
}

ObservedAction get_observed_action(std::span<const int> guess, const WorldState& world) {
  ObservedAction out;
  for (int card : guess) {
    out.push_back(card);
    if (world.categories[card] != CardCategory::Red) break;
  }
  return out;
}

double get_sum_distance(std::span<const double> clue_vector, std::span<const int> guess,
                        const WorldState& world, const EmbeddingTable& table,
                        const BoardView& view) {
  double q = 0.0;
  for (int card : guess) {
    if (world.categories[card] != CardCategory::Red) return q;
    q += distance(table.vector(view.words[card]), clue_vector);
  }
  return q;
}

std::vector<std::string> spymaster_candidates(const SpymasterBeliefs& beliefs,
                                              const WorldState& world, const BoardView& view) {
  std::vector<int> reds;
  for (int card : view.unrevealed()) {
    if (world.categories[card] == CardCategory::Red) reds.push_back(card);
  }
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& m : beliefs.models) {
    for (WordId w : candidate_clues(m, view, reds)) {
      const auto& word = m.embedding->word(w);
      if (seen.insert(word).second) out.push_back(word);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Per (word, model): how the model reads the clue word without noise.
struct ModelView {
  std::optional<WordId> id;
  std::vector<int> clean_ranking;
};

int turn_utility_of(const ObservedAction& observed, const WorldState& world, int red_total) {
  int v = -1;
  for (int card : observed) v += card_value(world.categories[card], red_total);
  return v;
}

std::vector<int> lexicographic_unrevealed(const BoardView& view) {
  auto cards = view.unrevealed();
  std::sort(cards.begin(), cards.end(),
            [&](int a, int b) { return view.words[a] < view.words[b]; });
  return cards;
}

}  // namespace

Clue get_clue(SpymasterBeliefs& beliefs, const WorldState& world, const BoardView& view,
              std::span<const std::string> candidates, const SpymasterConfig& config, Rng& rng,
              ClueSearchReport* report) {
  const int rho = view.remaining(CardCategory::Red);
  if (rho < 1) throw Error("get_clue: no Red cards remain");
  if (config.assumed_noise < 0.0) throw Error("get_clue: negative assumed noise");
  if (config.samples < 1) throw Error("get_clue: samples must be >= 1");
  const std::size_t leading = beliefs.leading();
  if (candidates.empty()) return level0_clue(beliefs.models[leading], world, view);
  if (!config.persist_counts) beliefs.counts.clear();

  const int red_total = view.composition.red;
  const auto lexicographic = lexicographic_unrevealed(view);
  const std::size_t n_models = beliefs.models.size();

  std::optional<EvaluatedClue> best;
  auto consider = [&](EvaluatedClue e) {
    if (report) report->evaluated.push_back(e);
    if (!best || e.expected_utility > best->expected_utility ||
        (e.expected_utility == best->expected_utility && e.sum_distance < best->sum_distance)) {
      best = std::move(e);
    }
  };

  auto model_views = [&](const std::string& word) {
    std::vector<ModelView> views(n_models);
    for (std::size_t g = 0; g < n_models; ++g) {
      const auto& table = *beliefs.models[g].embedding;
      views[g].id = table.find(word);
      views[g].clean_ranking = views[g].id
                                   ? rank_cards(table, view, table.vector(*views[g].id))
                                   : lexicographic;
    }
    return views;
  };

  auto evaluate = [&](const std::string& word, int n, const std::vector<ModelView>& views) {
    double expected = 0.0;
    for (std::size_t g = 0; g < n_models; ++g) {
      const auto& model = beliefs.models[g];
      auto& store = beliefs.counts[{static_cast<int>(g), word, n}];
      auto bump = [&](const ObservedAction& observed, long by) {
        auto [it, inserted] = store.try_emplace(observed, 1);
        it->second += by;
      };
      const auto& mv = views[g];
      if (!mv.id || config.assumed_noise == 0.0) {
        // Every sample reproduces the noiseless guess.
        auto guess = std::span<const int>(mv.clean_ranking)
                         .first(std::min<std::size_t>(n, mv.clean_ranking.size()));
        auto observed = get_observed_action(guess, world);
        expected += beliefs.posterior[g] * turn_utility_of(observed, world, red_total);
        bump(observed, config.samples);
        continue;
      }
      const auto& table = *model.embedding;
      auto raw = table.raw_vector(*mv.id);
      double sum = 0.0;
      for (int s = 0; s < config.samples; ++s) {
        Vector noisy = table.project(perturb(raw, config.assumed_noise, rng));
        auto guess = level0_guess(model, view, noisy, n);
        auto observed = get_observed_action(guess, world);
        sum += turn_utility_of(observed, world, red_total);
        bump(observed, 1);
      }
      expected += beliefs.posterior[g] * sum / config.samples;
    }
    const auto& lead = views[leading];
    double q = 0.0;
    if (lead.id) {
      const auto& table = *beliefs.models[leading].embedding;
      auto guess = std::span<const int>(lead.clean_ranking)
                       .first(std::min<std::size_t>(n, lead.clean_ranking.size()));
      q = get_sum_distance(table.vector(*lead.id), guess, world, table, view);
    }
    consider({{word, n}, expected, q});
  };

  for (const auto& word : candidates) {
    auto views = model_views(word);
    for (int n = 1; n <= rho; ++n) {
      bool viable = false;
      for (const auto& mv : views) {
        auto guess = std::span<const int>(mv.clean_ranking)
                         .first(std::min<std::size_t>(n, mv.clean_ranking.size()));
        bool all_red = std::all_of(guess.begin(), guess.end(), [&](int c) {
          return world.categories[c] == CardCategory::Red;
        });
        if (all_red) {
          viable = true;
          break;
        }
      }
      if (!viable) {
        if (report) report->pruned.push_back({word, n});
        break;
      }
      evaluate(word, n, views);
    }
  }

  if (!best) {
    if (report) report->used_fallback = true;
    for (const auto& word : candidates) evaluate(word, 1, model_views(word));
  }
  return best->clue;
}

}  // namespace codenames
