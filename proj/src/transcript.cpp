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

#include "codenames/transcript.hpp"

#include <fstream>
#include <sstream>

namespace codenames {

void Transcript::board(const BoardView& view, const WorldState& world) {
  std::string line = "BOARD";
  for (int i = 0; i < view.size(); ++i) {
    line += ' ' + view.words[i] + ':' + std::string(to_string(world.categories[i]));
  }
  events.push_back(std::move(line));
}

void Transcript::clue(const Clue& c) {
  events.push_back("CLUE " + c.word + ' ' + std::to_string(c.number));
}

void Transcript::channel(const std::string& received_word) {
  events.push_back("CHANNEL " + received_word);
}

void Transcript::reveal(const BoardView& view, const Reveal& r) {
  events.push_back("REVEAL " + view.words[r.card] + ' ' + std::string(to_string(r.category)));
}

void Transcript::end(const GameOutcome& outcome) {
  events.push_back("END " + std::to_string(outcome.score) + (outcome.win ? " win" : " loss"));
}

void Transcript::invalid(const std::string& diagnostic) {
  std::string flat = diagnostic;
  for (char& c : flat) {
    if (c == '\n') c = ' ';
  }
  events.push_back("END 0 invalid " + flat);
}

std::string Transcript::str() const {
  std::string out = "GAME";
  for (const auto& [k, v] : meta) out += ' ' + k + '=' + v;
  out += '\n';
  for (const auto& e : events) out += e + '\n';
  return out;
}

Transcript Transcript::parse(const std::string& text) {
  Transcript t;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!header) {
      if (line.rfind("GAME", 0) != 0) throw Error("transcript must start with a GAME record");
      header = true;
      std::istringstream fields(line.substr(4));
      std::string kv;
      while (fields >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error("malformed GAME field '" + kv + "'");
        t.meta[kv.substr(0, eq)] = kv.substr(eq + 1);
      }
      continue;
    }
    t.events.push_back(line);
  }
  if (!header) throw Error("empty transcript");
  return t;
}

void Transcript::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << str();
}

Transcript Transcript::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

}  // namespace codenames
