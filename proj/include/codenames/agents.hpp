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

#ifndef CODENAMES_AGENTS_HPP_
#define CODENAMES_AGENTS_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "codenames/bayesian_guesser.hpp"
#include "codenames/bayesian_spymaster.hpp"
#include "codenames/static_agents.hpp"
#include "codenames/voronoi.hpp"

namespace codenames {

struct CardBelief {
  std::string word;
  CategoryProbs probs;
};

// Posterior introspection for harness records and the play service.
struct BeliefSnapshot {
  bool bayesian = false;
  int turn = 0;
  std::vector<std::pair<std::string, double>> posterior;
  std::string leading;
  std::vector<CardBelief> cards;  // guessers only, sorted by p(Red) descending
};

// A clue as it reaches the guesser. With vector noise the guesser perturbs
// the clue word's vector in its own embedding using the channel's generator.
struct ReceivedClue {
  Clue clue;
  double vector_noise = 0.0;
  Rng* channel_rng = nullptr;
};

class SpymasterAgent {
 public:
  virtual ~SpymasterAgent() = default;
  virtual Clue give_clue(const WorldState& world, const BoardView& view) = 0;
  virtual void observe_turn(const Clue& /*given*/, std::span<const Reveal> /*observed*/) {}
  virtual BeliefSnapshot beliefs() const { return {}; }
  // Embedding the spymaster speaks through; the snap-noise channel perturbs here.
  virtual const PartnerModel& semantics() const = 0;
};

class GuesserAgent {
 public:
  virtual ~GuesserAgent() = default;
  virtual GuessSequence guess(const BoardView& view, const ReceivedClue& clue) = 0;
  virtual void observe_reveal(int /*pick_index*/, const Reveal& /*reveal*/) {}
  virtual BeliefSnapshot beliefs() const { return {}; }
};

// `static:guesser:<emb>`, `static:spymaster:<emb>`,
// `bayes:spymaster:<m1,m2,...>:noise=<x>:samples=<s>`,
// `bayes:guesser:<m1,...>:skip=<x>:belief=<y>:noise=<z>:worlds=<n>:vsamples=<v>`.
struct AgentSpec {
  std::string text;
  bool bayesian = false;
  std::string role;  // "spymaster" | "guesser"
  std::vector<std::string> models;
  std::map<std::string, double> params;

  double param(const std::string& key, double fallback) const;
};

AgentSpec parse_agent_spec(std::string_view text);

struct LibraryOptions {
  bool normalize = true;
  int neighbors = 300;
  int voronoi_pool = 500;
  std::uint64_t voronoi_seed = 0;
  // Restricts board words (and neighbour precomputation) when non-empty.
  std::vector<std::string> board_words;
  // Neighbour indexes and Voronoi caches are read from here when present.
  std::filesystem::path cache_dir;
};

// Named embeddings with their neighbour indexes and Voronoi estimators, and
// the factory that turns agent specs into agents. Read-only once populated
// apart from the internally synchronized Voronoi memo.
class ModelLibrary {
 public:
  explicit ModelLibrary(LibraryOptions options = {});

  void add(std::shared_ptr<const EmbeddingTable> table,
           std::shared_ptr<const NeighborIndex> index = nullptr);
  bool has(std::string_view name) const;
  std::vector<std::string> names() const;
  const LibraryOptions& options() const { return options_; }
  std::shared_ptr<const EmbeddingTable> embedding(std::string_view name) const;

  PartnerModel model(std::string_view name, int tie_rank = 0, double noise = 0.0) const;
  std::shared_ptr<const VoronoiEstimator> voronoi(std::string_view name, double sigma,
                                                  int samples) const;

  // Board words every named embedding can embed: the intersection of their
  // vocabularies (or of the configured board list), minus multi-token entries.
  std::vector<std::string> word_pool(std::span<const std::string> embeddings) const;

  std::unique_ptr<SpymasterAgent> make_spymaster(const AgentSpec& spec, std::uint64_t seed) const;
  std::unique_ptr<GuesserAgent> make_guesser(const AgentSpec& spec, std::uint64_t seed) const;
  // Every embedding a spec refers to.
  static std::vector<std::string> embeddings_of(const AgentSpec& spec) { return spec.models; }

 private:
  struct Entry {
    std::shared_ptr<const EmbeddingTable> table;
    std::shared_ptr<const NeighborIndex> index;
  };
  const Entry& entry(std::string_view name) const;

  LibraryOptions options_;
  std::map<std::string, Entry, std::less<>> entries_;
  mutable std::mutex voronoi_mu_;
  mutable std::map<std::tuple<std::string, double, int>, std::shared_ptr<VoronoiEstimator>>
      voronoi_;
};

}  // namespace codenames

#endif  // CODENAMES_AGENTS_HPP_
