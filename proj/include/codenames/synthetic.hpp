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

#ifndef CODENAMES_SYNTHETIC_HPP_
#define CODENAMES_SYNTHETIC_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "codenames/embedding.hpp"

namespace codenames {

// A family of embeddings over one vocabulary with planted topic clusters.
//
// Every word belongs to a topic. Its base vector is the topic centre plus a
// per-word offset; each family member adds its own per-word distortion, so
// members agree on coarse structure and disagree on fine neighbourhoods. In
// disjoint mode each member draws its own topic assignment and centres, so
// members share nothing but the vocabulary.
struct SyntheticOptions {
  std::string prefix = "syn";
  int count = 5;
  int vocab = 300;
  int dim = 24;
  int topics = 20;
  double center_scale = 3.0;  // per-component std of topic centres
  double word_spread = 1.0;   // per-component std of a word around its centre
  double distortion = 0.6;    // per-component std of a member's private offset
  bool disjoint = false;
  bool normalize = true;
  std::uint64_t seed = 1;
};

// Pronounceable, distinct, lowercase single-token words.
std::vector<std::string> synthetic_vocabulary(int n);

// Members are named prefix0, prefix1, ...
std::vector<EmbeddingTable> synthetic_family(const SyntheticOptions& options);

}  // namespace codenames

#endif  // CODENAMES_SYNTHETIC_HPP_
