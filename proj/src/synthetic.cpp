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

#include "codenames/synthetic.hpp"

#include <algorithm>
#include <random>

namespace codenames {

std::vector<std::string> synthetic_vocabulary(int n) {
  static constexpr std::string_view kOnsets = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  constexpr std::uint64_t kSyllables = kOnsets.size() * kVowels.size();
  constexpr std::uint64_t kSpace = kSyllables * kSyllables * kSyllables;
  // Multiplying by a unit modulo the three-syllable space scatters
  // consecutive indices over the whole space while keeping them distinct.
  constexpr std::uint64_t kStride = 104729;
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    std::uint64_t rest = idx < kSpace ? (idx * kStride) % kSpace : idx;
    std::string w;
    for (int k = 0; k < 3 || rest > 0; ++k) {
      auto s = rest % kSyllables;
      rest /= kSyllables;
      w += kOnsets[s / kVowels.size()];
      w += kVowels[s % kVowels.size()];
    }
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

std::vector<double> gaussian_block(std::size_t n, double sd, Rng& rng) {
  std::normal_distribution<double> d(0.0, sd);
  std::vector<double> out(n);
  for (auto& x : out) x = d(rng);
  return out;
}

}  // namespace

std::vector<EmbeddingTable> synthetic_family(const SyntheticOptions& o) {
  if (o.count < 1 || o.vocab < 2 || o.dim < 1 || o.topics < 1) {
    throw Error("synthetic_family: count, vocab, dim and topics must be positive");
  }
  const auto words = synthetic_vocabulary(o.vocab);
  const std::size_t n = static_cast<std::size_t>(o.vocab), d = static_cast<std::size_t>(o.dim);

  auto base_vectors = [&](std::uint64_t seed) {
    Rng rng(seed);
    auto centers = gaussian_block(static_cast<std::size_t>(o.topics) * d, o.center_scale, rng);
    std::vector<double> data = gaussian_block(n * d, o.word_spread, rng);
    for (std::size_t w = 0; w < n; ++w) {
      // Round-robin keeps topic sizes even; the shuffle below decorrelates
      // topic from word order.
      std::size_t t = w % static_cast<std::size_t>(o.topics);
      for (std::size_t j = 0; j < d; ++j) data[w * d + j] += centers[t * d + j];
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> shuffled(n * d);
    for (std::size_t w = 0; w < n; ++w) {
      std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(perm[w] * d), d,
                  shuffled.begin() + static_cast<std::ptrdiff_t>(w * d));
    }
    return shuffled;
  };

  const auto shared = base_vectors(derive_seed(o.seed, "shared"));
  std::vector<EmbeddingTable> out;
  for (int m = 0; m < o.count; ++m) {
    auto data = o.disjoint ? base_vectors(derive_seed(o.seed, "member", static_cast<std::uint64_t>(m))) : shared;
    Rng rng(derive_seed(o.seed, "distortion", static_cast<std::uint64_t>(m)));
    auto private_offset = gaussian_block(n * d, o.distortion, rng);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += private_offset[i];
    out.emplace_back(o.prefix + std::to_string(m), o.dim, words, std::move(data), o.normalize);
  }
  return out;
}

}  // namespace codenames
