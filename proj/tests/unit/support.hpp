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

#ifndef CODENAMES_TESTS_SUPPORT_HPP_
#define CODENAMES_TESTS_SUPPORT_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "codenames/embedding.hpp"
#include "codenames/game.hpp"
#include "codenames/static_agents.hpp"

namespace codenames::testing {

using Entries = std::vector<std::pair<std::string, Vector>>;

inline std::shared_ptr<const EmbeddingTable> table_of(const std::string& name,
                                                      const Entries& entries,
                                                      bool normalize = false) {
  std::vector<std::string> words;
  std::vector<double> data;
  const int dim = static_cast<int>(entries.front().second.size());
  for (const auto& [w, v] : entries) {
    words.push_back(w);
    data.insert(data.end(), v.begin(), v.end());
  }
  return std::make_shared<const EmbeddingTable>(name, dim, std::move(words), std::move(data),
                                                normalize);
}

inline PartnerModel model_of(std::shared_ptr<const EmbeddingTable> table, int k = 300,
                             int tie_rank = 0) {
  auto index = std::make_shared<const NeighborIndex>(NeighborIndex::build(*table, k));
  return {table->name(), table, index, 0, 0.0, tie_rank};
}

inline WorldState world_of(std::initializer_list<CardCategory> cats) { return {cats}; }

constexpr auto R = CardCategory::Red;
constexpr auto B = CardCategory::Blue;
constexpr auto Y = CardCategory::Bystander;
constexpr auto A = CardCategory::Assassin;

}  // namespace codenames::testing

#endif  // CODENAMES_TESTS_SUPPORT_HPP_
