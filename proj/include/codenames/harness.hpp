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

#ifndef CODENAMES_HARNESS_HPP_
#define CODENAMES_HARNESS_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "codenames/agents.hpp"
#include "codenames/synthetic.hpp"
#include "codenames/transcript.hpp"

namespace codenames {

enum class Channel {
  ClueVectorNoise,  // the guesser perturbs the clue word's vector in its own embedding
  SnapNoise,        // the spymaster's clue vector is perturbed and snapped to a word
};

// `deterministic` or `stochastic:<sigma>[:clue_vector_noise|snap_noise]`.
struct Environment {
  bool stochastic = false;
  double sigma = 0.0;
  Channel channel = Channel::ClueVectorNoise;

  std::string label() const;
  bool operator==(const Environment&) const = default;
};

Environment parse_environment(std::string_view text);

// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "CODENAMES_CACHE_DIR";

struct ExperimentConfig {
  std::map<std::string, std::filesystem::path> embeddings;  // name -> file
  std::optional<SyntheticOptions> synthetic;
  std::vector<std::string> spymasters;
  std::vector<std::string> guessers;
  std::vector<Environment> environments{Environment{}};
  // Embeddings inside the Bayesian agents' model set; guessers using any other
  // embedding are tabulated as out-of-distribution.
  std::vector<std::string> in_distribution;
  int games = 500;
  GameRules rules;
  std::uint64_t seed = 0;
  int workers = 1;
  bool shared_boards = true;
  bool timing = false;
  std::filesystem::path output;       // CSV; empty means stdout only
  std::filesystem::path table;        // rendered table
  std::filesystem::path transcripts;  // one file per game when set
  std::filesystem::path board_words;  // optional word list restricting boards
  LibraryOptions library;
};

// INI-style `key = value` file with [experiment], [board], [embeddings],
// [synthetic], [agents] and [library] sections. Relative paths resolve
// against `base_dir`.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Loads (or generates) every embedding the config names.
std::shared_ptr<ModelLibrary> build_library(const ExperimentConfig& config);

// The board word pool shared by every pairing of the config.
std::vector<std::string> config_word_pool(const ExperimentConfig& config,
                                          const ModelLibrary& library);

struct GameSeeds {
  std::uint64_t board = 0;
  std::uint64_t spymaster = 0;
  std::uint64_t guesser = 0;
  std::uint64_t channel = 0;
};

// Pure function of (master seed, pairing, game index).
GameSeeds game_seeds(std::uint64_t master, const std::string& spymaster,
                     const std::string& guesser, const Environment& env, int index,
                     bool shared_boards);

struct GameRecord {
  bool invalid = false;
  GameOutcome outcome;
  std::string diagnostic;
  Transcript transcript;
  std::vector<BeliefSnapshot> spymaster_beliefs;  // after each turn
  double seconds = 0.0;
};

GameRecord play_game(const ModelLibrary& library, const AgentSpec& spymaster,
                     const AgentSpec& guesser, const Environment& env, const GameRules& rules,
                     std::span<const std::string> pool, const GameSeeds& seeds);

struct ResultRow {
  std::string spymaster;
  std::string guesser;
  std::string environment;
  int games = 0;  // valid games only
  int wins = 0;
  double win_rate = 0.0;
  double mean_score = 0.0;
  double mean_turns = 0.0;
  int invalid = 0;
  double seconds = 0.0;
};

ResultRow summarize(const std::string& spymaster, const std::string& guesser,
                    const std::string& environment, std::span<const GameRecord> games);

struct PairingResult {
  ResultRow row;
  std::vector<GameRecord> games;
};

// Plays config.games games of one pairing on config.workers threads.
PairingResult run_pairing(const ExperimentConfig& config, const ModelLibrary& library,
                          const std::string& spymaster, const std::string& guesser,
                          const Environment& env);

struct MatrixResult {
  std::vector<ResultRow> rows;
  std::vector<std::vector<GameRecord>> games;  // parallel to rows
};

// Every spymaster x guesser x environment pairing, in config order. Games of
// all pairings share one worker pool; results do not depend on the count.
MatrixResult run_matrix(const ExperimentConfig& config, const ModelLibrary& library);

std::string to_csv(std::span<const ResultRow> rows, bool timing = false);
std::string render_table(std::span<const ResultRow> rows,
                         std::span<const std::string> in_distribution);

struct Interval {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

// Percentile bootstrap of mean(a) - mean(b) over paired samples.
Interval paired_bootstrap(std::span<const double> a, std::span<const double> b,
                          int resamples, std::uint64_t seed, double level = 0.95);
Interval bootstrap_mean(std::span<const double> a, int resamples, std::uint64_t seed,
                        double level = 0.95);

struct ReplayReport {
  bool ok = true;
  std::size_t first_difference = 0;  // event index when !ok
  std::string expected;
  std::string actual;
};

// Re-plays the game a transcript records (agents, environment and seeds are
// in its GAME line) and compares event by event.
ReplayReport replay(const Transcript& recorded, const ModelLibrary& library,
                    std::span<const std::string> pool);

}  // namespace codenames

#endif  // CODENAMES_HARNESS_HPP_
