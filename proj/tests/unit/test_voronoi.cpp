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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "codenames/voronoi.hpp"
#include "support.hpp"

using namespace codenames;
using codenames::testing::Entries;
using codenames::testing::table_of;

namespace {

double phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

std::shared_ptr<const EmbeddingTable> random_table(int n, int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  Entries entries;
  for (int i = 0; i < n; ++i) {
    Vector v(dim);
    for (auto& x : v) x = d(rng);
    entries.push_back({"w" + std::to_string(1000 + i), v});
  }
  return table_of("rand", entries);
}

}  // namespace

TEST_CASE("voronoi: zero noise is an indicator") {
  auto t = table_of("t", {{"a", {0}}, {"b", {10}}});
  std::vector<WordId> pool{0, 1};
  Rng rng(1);
  CHECK(voronoi_probability(*t, 0, 0, 0.0, 10, pool, rng) == 1.0);
  CHECK(voronoi_probability(*t, 0, 1, 0.0, 10, pool, rng) == 0.0);
  VoronoiEstimator est(t, nullptr, {"t", 0.0, 100, 3, 500});
  CHECK(est.probability(0, 0) == 1.0);
  CHECK(est.probability(0, 1) == 0.0);
}

TEST_CASE("voronoi: half-space boundary at distance 5 matches the Gaussian CDF") {
  auto t = table_of("t", {{"a", {0}}, {"b", {10}}});
  std::vector<WordId> pool{0, 1};
  Rng rng(2024);
  double p = voronoi_probability(*t, 0, 0, 1.0, 10000, pool, rng);
  CHECK(std::abs(p - phi(5.0)) <= 0.01);
}

TEST_CASE("voronoi: boundary through the centre splits the mass evenly") {
  auto t = table_of("t", {{"a", {-1}}, {"b", {1}}});
  std::vector<WordId> pool{0, 1};
  Rng rng(77);
  Vector center{0.0};
  double p = voronoi_cell_probability(*t, center, 0, 1.0, 10000, pool, rng);
  CHECK(std::abs(p - 0.5) <= 0.02);
}

TEST_CASE("voronoi: intermediate boundary against the analytic value") {
  // Boundary 1.5 from the centre: P(stay) = Phi(1.5).
  auto t = table_of("t", {{"a", {0}}, {"b", {3}}});
  std::vector<WordId> pool{0, 1};
  Rng rng(5);
  double p = voronoi_probability(*t, 0, 0, 1.0, 20000, pool, rng);
  CHECK(std::abs(p - phi(1.5)) <= 0.01);
}

TEST_CASE("voronoi: a row sums to at most one and to one over the whole vocabulary") {
  auto t = random_table(40, 4, 8);
  VoronoiEstimator est(t, nullptr, {"rand", 0.7, 500, 1, 500});
  for (WordId intended : {0, 5, 17}) {
    double sum = 0.0;
    for (WordId o = 0; o < 40; ++o) {
      double p = est.probability(intended, o);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      sum += p;
    }
    // The pool (500 neighbours) covers the whole 40-word vocabulary.
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("voronoi: restricted pool rows never exceed one") {
  auto t = random_table(60, 3, 12);
  auto index = std::make_shared<const NeighborIndex>(NeighborIndex::build(*t, 20));
  VoronoiEstimator est(t, index, {"rand", 1.0, 400, 9, 10});
  auto cache = [&] {
    est.precompute(std::vector<WordId>{0, 1, 2});
    return est.export_cache();
  }();
  for (const auto& [intended, row] : cache.rows) {
    double sum = 0.0;
    for (const auto& [observed, p] : row) sum += p;
    CHECK(sum <= 1.0 + 1e-9);
    CHECK(cache.pools.at(intended).size() == 11);
  }
}

TEST_CASE("voronoi: estimates do not depend on query order or thread") {
  auto t = random_table(30, 4, 21);
  VoronoiKey key{"rand", 0.8, 300, 4, 500};
  VoronoiEstimator forward(t, nullptr, key), backward(t, nullptr, key), threaded(t, nullptr, key);
  std::vector<double> a, b(30 * 30), c(30 * 30);
  for (WordId i = 0; i < 30; ++i) {
    for (WordId o = 0; o < 30; ++o) a.push_back(forward.probability(i, o));
  }
  for (WordId i = 29; i >= 0; --i) {
    for (WordId o = 29; o >= 0; --o) b[i * 30 + o] = backward.probability(i, o);
  }
  {
    std::vector<std::jthread> pool;
    for (int k = 0; k < 4; ++k) {
      pool.emplace_back([&, k] {
        for (WordId i = k; i < 30; i += 4) {
          for (WordId o = 0; o < 30; ++o) c[i * 30 + o] = threaded.probability(i, o);
        }
      });
    }
  }
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("voronoi cache: save, load and preload reproduce the estimates") {
  auto t = random_table(25, 3, 31);
  VoronoiKey key{"rand", 0.5, 200, 6, 500};
  VoronoiEstimator est(t, nullptr, key);
  std::vector<WordId> rows{0, 3, 7};
  est.precompute(rows);
  auto cache = est.export_cache();
  auto path = std::filesystem::temp_directory_path() / cache.file_name();
  cache.save(path);
  auto back = VoronoiCache::load(path);
  CHECK(back.key == key);
  CHECK(back.rows == cache.rows);

  VoronoiEstimator fresh(t, nullptr, key);
  fresh.preload(back);
  for (WordId i : rows) {
    for (WordId o = 0; o < 25; ++o) CHECK(fresh.probability(i, o) == est.probability(i, o));
  }
  VoronoiEstimator other(t, nullptr, {"rand", 0.5, 200, 7, 500});
  CHECK_THROWS_AS(other.preload(back), Error);
  std::filesystem::remove(path);
}

TEST_CASE("voronoi cache: version mismatch is rejected") {
  auto path = std::filesystem::temp_directory_path() / "codenames_bad_cache.txt";
  {
    std::ofstream out(path);
    out << "VORONOI 99\nx 1 10 0 500\n";
  }
  CHECK_THROWS_AS(VoronoiCache::load(path), Error);
  std::filesystem::remove(path);
}
