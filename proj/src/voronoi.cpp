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

#include "codenames/voronoi.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_set>

namespace codenames {
namespace {

// Histogram of nearest pool words over n perturbations of intended.
std::unordered_map<WordId, int> sample_cells(const EmbeddingTable& table, WordId intended,
                                             double sigma, int n_samples,
                                             std::span<const WordId> pool, Rng& rng) {
  std::unordered_map<WordId, int> hits;
  auto raw = table.raw_vector(intended);
  for (int i = 0; i < n_samples; ++i) {
    Vector y = table.project(perturb(raw, sigma, rng));
    ++hits[snap_to_vocab(table, y, pool)];
  }
  return hits;
}

std::vector<WordId> with_forced(std::span<const WordId> pool, std::initializer_list<WordId> forced) {
  std::vector<WordId> out(pool.begin(), pool.end());
  for (WordId w : forced) {
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  }
  return out;
}

}  // namespace

double voronoi_probability(const EmbeddingTable& table, WordId intended, WordId observed,
                           double sigma, int n_samples, std::span<const WordId> pool, Rng& rng) {
  if (n_samples < 1) throw Error("voronoi_probability: n_samples must be >= 1");
  if (sigma < 0.0) throw Error("voronoi_probability: negative sigma");
  auto full = with_forced(pool, {intended, observed});
  auto hits = sample_cells(table, intended, sigma, n_samples, full, rng);
  auto it = hits.find(observed);
  return it == hits.end() ? 0.0 : static_cast<double>(it->second) / n_samples;
}

double voronoi_cell_probability(const EmbeddingTable& table, std::span<const double> center,
                                WordId observed, double sigma, int n_samples,
                                std::span<const WordId> pool, Rng& rng) {
  if (n_samples < 1) throw Error("voronoi_cell_probability: n_samples must be >= 1");
  if (sigma < 0.0) throw Error("voronoi_cell_probability: negative sigma");
  if (pool.empty()) throw Error("voronoi_cell_probability: empty pool");
  int hits = 0;
  for (int i = 0; i < n_samples; ++i) {
    Vector y = table.project(perturb(center, sigma, rng));
    if (snap_to_vocab(table, y, pool) == observed) ++hits;
  }
  return static_cast<double>(hits) / n_samples;
}

std::string VoronoiCache::file_name() const {
  std::ostringstream name;
  name << "voronoi_" << key.embedding << "_s" << std::setprecision(6) << key.sigma << "_n"
       << key.samples << "_seed" << key.seed << "_p" << key.pool_size << ".txt";
  return name.str();
}

void VoronoiCache::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "VORONOI " << kFormatVersion << '\n';
  out << std::setprecision(17);
  out << key.embedding << ' ' << key.sigma << ' ' << key.samples << ' ' << key.seed << ' '
      << key.pool_size << '\n';
  for (const auto& [intended, row] : rows) {
    const auto& pool = pools.at(intended);
    out << "ROW " << intended << ' ' << pool.size() << ' ' << row.size() << '\n';
    for (std::size_t i = 0; i < pool.size(); ++i) out << (i ? " " : "") << pool[i];
    out << '\n';
    for (const auto& [observed, p] : row) out << observed << ' ' << p << '\n';
  }
}

VoronoiCache VoronoiCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "VORONOI") throw Error(path.string() + ": not a Voronoi cache");
  if (version != kFormatVersion) {
    throw Error(path.string() + ": unsupported Voronoi cache version " + std::to_string(version));
  }
  VoronoiCache cache;
  in >> cache.key.embedding >> cache.key.sigma >> cache.key.samples >> cache.key.seed >>
      cache.key.pool_size;
  std::string tag;
  while (in >> tag) {
    if (tag != "ROW") throw Error(path.string() + ": malformed row header");
    std::string intended;
    std::size_t pool_size = 0, entries = 0;
    in >> intended >> pool_size >> entries;
    auto& pool = cache.pools[intended];
    pool.resize(pool_size);
    for (auto& w : pool) in >> w;
    auto& row = cache.rows[intended];
    for (std::size_t i = 0; i < entries; ++i) {
      std::string observed;
      double p = 0;
      in >> observed >> p;
      row[observed] = p;
    }
    if (!in) throw Error(path.string() + ": truncated Voronoi cache");
  }
  return cache;
}

VoronoiEstimator::VoronoiEstimator(std::shared_ptr<const EmbeddingTable> table,
                                   std::shared_ptr<const NeighborIndex> index, VoronoiKey key)
    : table_(std::move(table)), index_(std::move(index)), key_(std::move(key)) {
  if (key_.sigma < 0.0) throw Error("VoronoiEstimator: negative sigma");
  if (key_.samples < 1) throw Error("VoronoiEstimator: samples must be >= 1");
  key_.embedding = table_->name();
}

std::vector<WordId> VoronoiEstimator::pool_for(WordId intended) const {
  std::vector<WordId> pool{intended};
  const auto wanted = std::min<std::size_t>(static_cast<std::size_t>(key_.pool_size),
                                            table_->size() - 1);
  const std::vector<Neighbor>* list = index_ ? index_->find(intended) : nullptr;
  if (list != nullptr && list->size() >= wanted) {
    for (std::size_t i = 0; i < wanted; ++i) pool.push_back((*list)[i].word);
  } else if (wanted > 0) {
    for (const auto& n : nearest_words(*table_, table_->vector(intended),
                                       static_cast<int>(wanted), {intended})) {
      pool.push_back(n.word);
    }
  }
  return pool;
}

std::shared_ptr<const VoronoiEstimator::Row> VoronoiEstimator::row(WordId intended) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = rows_.find(intended);
    if (it != rows_.end()) return it->second;
  }
  auto r = std::make_shared<Row>();
  r->pool = pool_for(intended);
  Rng rng(derive_seed(key_.seed, "row", table_->word(intended)));
  for (auto [w, count] : sample_cells(*table_, intended, key_.sigma, key_.samples, r->pool, rng)) {
    r->probability[w] = static_cast<double>(count) / key_.samples;
  }
  std::lock_guard<std::mutex> lock(mu_);
  return rows_.emplace(intended, std::move(r)).first->second;
}

double VoronoiEstimator::probability(WordId intended, WordId observed) const {
  if (key_.sigma == 0.0) return intended == observed ? 1.0 : 0.0;
  auto r = row(intended);
  if (std::find(r->pool.begin(), r->pool.end(), observed) != r->pool.end()) {
    auto it = r->probability.find(observed);
    return it == r->probability.end() ? 0.0 : it->second;
  }
  const std::uint64_t pair_key =
      (static_cast<std::uint64_t>(static_cast<std::uint32_t>(intended)) << 32) |
      static_cast<std::uint32_t>(observed);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = pairs_.find(pair_key);
    if (it != pairs_.end()) return it->second;
  }
  Rng rng(derive_seed(key_.seed, "pair", table_->word(intended), table_->word(observed)));
  double p = voronoi_probability(*table_, intended, observed, key_.sigma, key_.samples, r->pool,
                                 rng);
  std::lock_guard<std::mutex> lock(mu_);
  pairs_.emplace(pair_key, p);
  return p;
}

void VoronoiEstimator::precompute(std::span<const WordId> intended) const {
  for (WordId w : intended) row(w);
}

void VoronoiEstimator::preload(const VoronoiCache& cache) {
  if (cache.key.embedding != key_.embedding || cache.key.sigma != key_.sigma ||
      cache.key.samples != key_.samples || cache.key.seed != key_.seed ||
      cache.key.pool_size != key_.pool_size) {
    throw Error("Voronoi cache key does not match estimator for '" + key_.embedding + "'");
  }
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& [intended, probs] : cache.rows) {
    auto r = std::make_shared<Row>();
    for (const auto& w : cache.pools.at(intended)) r->pool.push_back(table_->id(w));
    for (const auto& [observed, p] : probs) r->probability[table_->id(observed)] = p;
    rows_[table_->id(intended)] = std::move(r);
  }
}

VoronoiCache VoronoiEstimator::export_cache() const {
  VoronoiCache cache;
  cache.key = key_;
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& [intended, r] : rows_) {
    const auto& word = table_->word(intended);
    auto& pool = cache.pools[word];
    for (WordId w : r->pool) pool.push_back(table_->word(w));
    auto& row = cache.rows[word];
    for (const auto& [observed, p] : r->probability) row[table_->word(observed)] = p;
  }
  return cache;
}

}  // namespace codenames
