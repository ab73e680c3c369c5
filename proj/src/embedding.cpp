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

#include "codenames/embedding.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace codenames {
namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_int(std::string_view s, long& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Strict weak order on (distance, lexicographic word).
struct CloserFirst {
  const EmbeddingTable& table;
  bool operator()(const Neighbor& a, const Neighbor& b) const {
    if (a.distance != b.distance) return a.distance < b.distance;
    return table.lex_rank(a.word) < table.lex_rank(b.word);
  }
};

}  // namespace

EmbeddingTable::EmbeddingTable(std::string name, int dim, std::vector<std::string> words,
                               std::vector<double> data, bool normalize)
    : name_(std::move(name)), dim_(dim), normalized_(normalize), words_(std::move(words)),
      data_(std::move(data)) {
  if (dim_ <= 0) throw Error("embedding '" + name_ + "': dimension must be positive");
  if (data_.size() != words_.size() * static_cast<std::size_t>(dim_)) {
    throw Error("embedding '" + name_ + "': data size does not match words x dim");
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].empty()) throw Error("embedding '" + name_ + "': empty word");
    if (!index_.emplace(words_[i], static_cast<WordId>(i)).second) {
      throw Error("embedding '" + name_ + "': duplicate word '" + words_[i] + "'");
    }
  }
  for (double x : data_) {
    if (!std::isfinite(x)) throw Error("embedding '" + name_ + "': non-finite component");
  }
  if (normalized_) {
    raw_ = data_;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      double* row = data_.data() + i * dim_;
      double norm = std::sqrt(std::inner_product(row, row + dim_, row, 0.0));
      if (norm == 0.0) {
        throw Error("embedding '" + name_ + "': zero vector for '" + words_[i] +
                    "' cannot be normalized");
      }
      for (int d = 0; d < dim_; ++d) row[d] /= norm;
    }
  }
  std::vector<WordId> order(words_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [this](WordId a, WordId b) { return words_[a] < words_[b]; });
  lex_rank_.resize(words_.size());
  for (std::size_t r = 0; r < order.size(); ++r) lex_rank_[order[r]] = static_cast<std::int32_t>(r);
}

std::optional<WordId> EmbeddingTable::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WordId EmbeddingTable::id(std::string_view word) const {
  auto found = find(word);
  if (!found) throw UnknownWord(word);
  return *found;
}

std::span<const double> EmbeddingTable::raw_vector(WordId id) const {
  if (!normalized_) return vector(id);
  return {raw_.data() + static_cast<std::size_t>(id) * dim_, static_cast<std::size_t>(dim_)};
}

Vector EmbeddingTable::project(Vector v) const {
  if (!normalized_) return v;
  double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

EmbeddingTable parse_embeddings(std::istream& in, bool normalize, std::string name) {
  std::vector<std::string> words;
  std::vector<double> data;
  std::unordered_set<std::string> seen;
  std::size_t duplicates = 0;
  int dim = -1;
  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (first_content) {
      first_content = false;
      long v = 0, d = 0;
      if (fields.size() == 2 && parse_int(fields[0], v) && parse_int(fields[1], d)) {
        continue;  // `V d` header
      }
    }
    if (fields.size() < 2) {
      throw Error(name + ":" + std::to_string(line_no) + ": word without components");
    }
    int this_dim = static_cast<int>(fields.size()) - 1;
    if (dim < 0) {
      dim = this_dim;
    } else if (this_dim != dim) {
      throw Error(name + ":" + std::to_string(line_no) + ": dimension mismatch (expected " +
                  std::to_string(dim) + ", got " + std::to_string(this_dim) + ")");
    }
    std::string word = to_lower(fields[0]);
    std::size_t offset = data.size();
    data.resize(offset + dim);
    for (int d = 0; d < dim; ++d) {
      if (!parse_double(fields[d + 1], data[offset + d])) {
        throw Error(name + ":" + std::to_string(line_no) + ": non-numeric component '" +
                    std::string(fields[d + 1]) + "'");
      }
    }
    if (!seen.insert(word).second) {
      ++duplicates;
      data.resize(offset);
      continue;
    }
    words.push_back(std::move(word));
  }
  if (words.empty()) throw Error(name + ": empty embedding file");
  EmbeddingTable table(std::move(name), dim, std::move(words), std::move(data), normalize);
  table.set_duplicates_dropped(duplicates);
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path, bool normalize,
                               std::string name) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embedding file " + path.string());
  if (name.empty()) name = path.stem().string();
  return parse_embeddings(in, normalize, std::move(name));
}

void write_embeddings(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << table.size() << ' ' << table.dim() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.word(static_cast<WordId>(i));
    for (double x : table.raw_vector(static_cast<WordId>(i))) out << ' ' << x;
    out << '\n';
  }
}

double distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double distance(const EmbeddingTable& table, std::string_view a, std::string_view b) {
  return distance(table.vector(a), table.vector(b));
}

double distance(const EmbeddingTable& table, std::string_view a, std::span<const double> b) {
  return distance(table.vector(a), b);
}

NeighborIndex NeighborIndex::build(const EmbeddingTable& table, int k,
                                   std::span<const WordId> queries) {
  if (k < 1) throw Error("neighbour count must be >= 1");
  NeighborIndex index(table.name(), k);
  std::vector<WordId> all;
  if (queries.empty()) {
    all.resize(table.size());
    std::iota(all.begin(), all.end(), 0);
    queries = all;
  }
  for (WordId q : queries) {
    index.lists_[q] = nearest_words(table, table.vector(q), k, {q});
  }
  return index;
}

const std::vector<Neighbor>* NeighborIndex::find(WordId word) const {
  auto it = lists_.find(word);
  return it == lists_.end() ? nullptr : &it->second;
}

void NeighborIndex::save(const EmbeddingTable& table, const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "NEIGHBORS 1 " << source_ << ' ' << k_ << ' ' << lists_.size() << '\n';
  std::vector<WordId> keys;
  for (const auto& [w, _] : lists_) keys.push_back(w);
  std::sort(keys.begin(), keys.end(),
            [&](WordId a, WordId b) { return table.lex_rank(a) < table.lex_rank(b); });
  out << std::setprecision(17);
  for (WordId w : keys) {
    out << table.word(w);
    for (const auto& n : lists_.at(w)) out << ' ' << table.word(n.word) << ' ' << n.distance;
    out << '\n';
  }
}

NeighborIndex NeighborIndex::load(const EmbeddingTable& table, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string magic, source;
  int version = 0, k = 0;
  std::size_t count = 0;
  in >> magic >> version >> source >> k >> count;
  if (magic != "NEIGHBORS" || version != 1) throw Error(path.string() + ": not a neighbour index");
  NeighborIndex index(source, k);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    auto fields = split_ws(line);
    if (fields.empty()) continue;
    WordId q = table.id(fields[0]);
    std::vector<Neighbor> list;
    for (std::size_t i = 1; i + 1 < fields.size(); i += 2) {
      double d = 0;
      if (!parse_double(fields[i + 1], d)) throw Error(path.string() + ": bad distance");
      list.push_back({table.id(fields[i]), d});
    }
    index.lists_[q] = std::move(list);
  }
  return index;
}

std::vector<Neighbor> nearest_words(const EmbeddingTable& table, std::span<const double> query,
                                    int k, const std::unordered_set<WordId>& exclude,
                                    std::span<const WordId> pool) {
  if (k < 1) throw Error("nearest_words: k must be >= 1");
  std::vector<Neighbor> all;
  auto consider = [&](WordId w) {
    if (!exclude.empty() && exclude.count(w)) return;
    all.push_back({w, distance(table.vector(w), query)});
  };
  if (pool.empty()) {
    all.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) consider(static_cast<WordId>(i));
  } else {
    all.reserve(pool.size());
    std::unordered_set<WordId> seen;
    for (WordId w : pool) {
      if (seen.insert(w).second) consider(w);
    }
  }
  CloserFirst cmp{table};
  std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(k), all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), cmp);
  all.resize(keep);
  return all;
}

std::vector<Neighbor> nearest_words(const EmbeddingTable& table, const NeighborIndex& index,
                                    WordId anchor, std::span<const double> query, int k,
                                    const std::unordered_set<WordId>& exclude) {
  const auto* list = index.find(anchor);
  if (list == nullptr) return nearest_words(table, query, k, exclude);
  std::vector<WordId> pool;
  pool.reserve(list->size() + 1);
  pool.push_back(anchor);
  for (const auto& n : *list) pool.push_back(n.word);
  return nearest_words(table, query, k, exclude, pool);
}

Vector perturb(std::span<const double> v, double sigma, Rng& rng) {
  if (sigma < 0.0) throw Error("perturb: negative sigma");
  Vector out(v.begin(), v.end());
  if (sigma == 0.0) return out;
  std::normal_distribution<double> noise(0.0, sigma);
  for (double& x : out) x += noise(rng);
  return out;
}

WordId snap_to_vocab(const EmbeddingTable& table, std::span<const double> v,
                     std::span<const WordId> pool) {
  if (pool.empty()) throw Error("snap_to_vocab: empty candidate pool");
  WordId best = pool.front();
  double best_d = distance(table.vector(best), v);
  for (WordId w : pool.subspan(1)) {
    double d = distance(table.vector(w), v);
    if (d < best_d || (d == best_d && table.lex_rank(w) < table.lex_rank(best))) {
      best = w;
      best_d = d;
    }
  }
  return best;
}

}  // namespace codenames
