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

#ifndef CODENAMES_EMBEDDING_HPP_
#define CODENAMES_EMBEDDING_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "codenames/common.hpp"

namespace codenames {

using WordId = std::int32_t;
using Vector = std::vector<double>;

// A word -> vector table. The semantics of one partner model.
//
// When built with normalization, `vector()` returns unit-norm vectors and
// `raw_vector()` keeps the vectors as read from disk; noise is applied in the
// raw space and projected back with `project()`.
class EmbeddingTable {
 public:
  EmbeddingTable(std::string name, int dim, std::vector<std::string> words,
                 std::vector<double> data, bool normalize);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  bool normalized() const { return normalized_; }

  // Number of duplicate words dropped while loading (first occurrence wins).
  std::size_t duplicates_dropped() const { return duplicates_dropped_; }
  void set_duplicates_dropped(std::size_t n) { duplicates_dropped_ = n; }

  std::optional<WordId> find(std::string_view word) const;
  WordId id(std::string_view word) const;  // throws UnknownWord
  bool contains(std::string_view word) const { return find(word).has_value(); }
  const std::string& word(WordId id) const { return words_[id]; }
  const std::vector<std::string>& words() const { return words_; }

  // Position of the word in lexicographic order; the universal tie-break.
  std::int32_t lex_rank(WordId id) const { return lex_rank_[id]; }

  std::span<const double> vector(WordId id) const {
    return {data_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<const double> vector(std::string_view word) const { return vector(id(word)); }
  std::span<const double> raw_vector(WordId id) const;

  // Maps a raw-space vector into the search space (unit-normalizes when the
  // table is normalized; zero vectors are returned unchanged).
  Vector project(Vector v) const;

 private:
  std::string name_;
  int dim_;
  bool normalized_;
  std::size_t duplicates_dropped_ = 0;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::vector<double> raw_;  // empty unless normalized
  std::vector<std::int32_t> lex_rank_;
  std::unordered_map<std::string, WordId> index_;
};

// Reads `word c1 ... cd` lines; an optional `V d` header line is skipped.
// Words are lowercase-folded. Throws Error on dimension mismatch, non-numeric
// components, zero vectors under normalization, or an empty file.
EmbeddingTable parse_embeddings(std::istream& in, bool normalize, std::string name);
EmbeddingTable load_embeddings(const std::filesystem::path& path, bool normalize,
                               std::string name = {});
void write_embeddings(const EmbeddingTable& table, const std::filesystem::path& path);

double distance(std::span<const double> a, std::span<const double> b);
double distance(const EmbeddingTable& table, std::string_view a, std::string_view b);
double distance(const EmbeddingTable& table, std::string_view a, std::span<const double> b);

struct Neighbor {
  WordId word;
  double distance;
  bool operator==(const Neighbor&) const = default;
};

// Precomputed k nearest neighbours for a set of query words. Each list is
// sorted ascending by distance (ties lexicographic) and omits the query.
class NeighborIndex {
 public:
  NeighborIndex() = default;
  NeighborIndex(std::string source, int k) : source_(std::move(source)), k_(k) {}

  // Builds lists for `queries` (all words when empty) by exact scan.
  static NeighborIndex build(const EmbeddingTable& table, int k,
                             std::span<const WordId> queries = {});

  const std::string& source() const { return source_; }
  int k() const { return k_; }
  std::size_t size() const { return lists_.size(); }
  const std::vector<Neighbor>* find(WordId word) const;
  void set(WordId word, std::vector<Neighbor> list) { lists_[word] = std::move(list); }

  void save(const EmbeddingTable& table, const std::filesystem::path& path) const;
  static NeighborIndex load(const EmbeddingTable& table, const std::filesystem::path& path);

 private:
  std::string source_;
  int k_ = 0;
  std::unordered_map<WordId, std::vector<Neighbor>> lists_;
};

// The k words nearest to `query`, ascending by distance with lexicographic
// tie-break, skipping `exclude`. Scans `pool` when non-empty, else the whole
// vocabulary.
std::vector<Neighbor> nearest_words(const EmbeddingTable& table, std::span<const double> query,
                                    int k, const std::unordered_set<WordId>& exclude = {},
                                    std::span<const WordId> pool = {});

// Index-restricted variant: searches `anchor`'s neighbour list plus `anchor`
// itself, falling back to a full scan when the index does not cover `anchor`.
std::vector<Neighbor> nearest_words(const EmbeddingTable& table, const NeighborIndex& index,
                                    WordId anchor, std::span<const double> query, int k,
                                    const std::unordered_set<WordId>& exclude = {});

// vector + z with z_i ~ N(0, sigma^2) i.i.d.; sigma == 0 returns the input.
Vector perturb(std::span<const double> v, double sigma, Rng& rng);

// The pool word nearest to `v` (lexicographic tie-break). Pool must be non-empty.
WordId snap_to_vocab(const EmbeddingTable& table, std::span<const double> v,
                     std::span<const WordId> pool);

}  // namespace codenames

#endif  // CODENAMES_EMBEDDING_HPP_
