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

#ifndef CODENAMES_TRANSCRIPT_HPP_
#define CODENAMES_TRANSCRIPT_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "codenames/game.hpp"

namespace codenames {

// Line-oriented game record:
//
//   GAME key=value ...            metadata (seeds, agent specs, environment)
//   BOARD word:category ...       the dealt board
//   CLUE word n                   clue as given by the spymaster
//   CHANNEL word                  clue word after channel noise, when changed
//   REVEAL word category          one revealed card
//   END score win|loss|invalid
class Transcript {
 public:
  std::map<std::string, std::string> meta;
  std::vector<std::string> events;

  void board(const BoardView& view, const WorldState& world);
  void clue(const Clue& clue);
  void channel(const std::string& received_word);
  void reveal(const BoardView& view, const Reveal& r);
  void end(const GameOutcome& outcome);
  void invalid(const std::string& diagnostic);

  std::string str() const;
  static Transcript parse(const std::string& text);
  void save(const std::filesystem::path& path) const;
  static Transcript load(const std::filesystem::path& path);

  bool operator==(const Transcript&) const = default;
};

}  // namespace codenames

#endif  // CODENAMES_TRANSCRIPT_HPP_
