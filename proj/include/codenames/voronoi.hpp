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

#ifndef CODENAMES_VORONOI_HPP_
#define CODENAMES_VORONOI_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "codenames/embedding.hpp"

namespace codenames {

// Monte-Carlo estimate of the Gaussian mass of `observed`'s Voronoi cell
// around `intended`: the fraction of `n_samples` perturbations of intended's
// raw vector whose nearest pool word is `observed`. The pool is searched with
// `intended` and `observed` force-included.
double voronoi_probability(const EmbeddingTable& table, WordId intended, WordId observed,
                           double sigma, int n_samples, std::span<const WordId> pool, Rng& rng);

// Gaussian mass of `observed`'s Voronoi cell (cells taken over `pool`)
// around an arbitrary raw-space centre. voronoi_probability is the case
// centre = intended's vector with intended in the pool.
double voronoi_cell_probability(const EmbeddingTable& table, std::span<const double> center,
                                WordId observed, double sigma, int n_samples,
                                std::span<const WordId> pool, Rng& rng);

// Identifies a precomputed table of Voronoi probabilities.
struct VoronoiKey {
  std::string embedding;
  double sigma = 0.0;
  int samples = 1000;
  std::uint64_t seed = 0;
  int pool_size = 500;
  auto operator<=>(const VoronoiKey&) const = default;
};

// intended -> observed -> probability, all keyed by word. Rows only hold
// observed words that were hit at least once; `pools` records which words the
// row's estimate searched over (a pool word absent from the row has
// probability 0).
struct VoronoiCache {
  static constexpr int kFormatVersion = 1;

  VoronoiKey key;
  std::map<std::string, std::map<std::string, double>> rows;
  std::map<std::string, std::vector<std::string>> pools;

  void save(const std::filesystem::path& path) const;
  static VoronoiCache load(const std::filesystem::path& path);
  // File name under a cache directory derived from the key.
  std::string file_name() const;
};

// Thread-safe, memoizing source of Voronoi probabilities for one embedding at
// one noise level. Every estimate is seeded from (key.seed, intended[,
// observed]) alone, so results are independent of query order and of which
// thread computes them first.
class VoronoiEstimator {
 public:
  VoronoiEstimator(std::shared_ptr<const EmbeddingTable> table,
                   std::shared_ptr<const NeighborIndex> index, VoronoiKey key);

  const VoronoiKey& key() const { return key_; }
  const EmbeddingTable& table() const { return *table_; }

  double probability(WordId intended, WordId observed) const;

  // Fills the row cache for the given intended words.
  void precompute(std::span<const WordId> intended) const;
  void preload(const VoronoiCache& cache);
  VoronoiCache export_cache() const;

 private:
  struct Row {
    std::vector<WordId> pool;
    std::unordered_map<WordId, double> probability;
  };
  std::shared_ptr<const Row> row(WordId intended) const;
  std::vector<WordId> pool_for(WordId intended) const;

  std::shared_ptr<const EmbeddingTable> table_;
  std::shared_ptr<const NeighborIndex> index_;
  VoronoiKey key_;
  mutable std::mutex mu_;
  mutable std::unordered_map<WordId, std::shared_ptr<const Row>> rows_;
  mutable std::unordered_map<std::uint64_t, double> pairs_;
};

}  // namespace codenames

#endif  // CODENAMES_VORONOI_HPP_
